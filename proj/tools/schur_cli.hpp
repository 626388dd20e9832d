#pragma once

// Command-line front end: table, selfcheck, transform, content, classify.
// run() takes its output streams as parameters so the acceptance suite can
// drive it in-process.

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <schur/schur.hpp>

namespace schur::cli {

enum ExitCode : int {
    kOk = 0,
    kUsage = 1,
    kInputError = 2,
    kResourceError = 3,
    kVerificationFailed = 4,
};

struct RunConfig {
    int n_max = kDefaultMaxN;
    std::uint64_t budget_mib = default_budget_bytes() / kMiB;
    bool normalize = false;
    std::string refs;
    std::string mode = "all";
    std::string metric = "l2";
    std::string format = "table";
    std::string out;
    std::string cache;
    std::string manifest;
    std::vector<std::string> files;

    BuildOptions build() const {
        BuildOptions b;
        b.n_max = n_max;
        b.budget_bytes = budget_mib * kMiB;
        return b;
    }
};

inline void print_character_table(const CharacterTable& t, std::ostream& os) {
    // Columns are shown identity class first, the reverse of canonical order.
    const std::size_t p = t.size();
    std::vector<std::size_t> cols(p);
    for (std::size_t c = 0; c < p; ++c) cols[c] = p - 1 - c;

    std::vector<std::string> reps;
    std::size_t w = 4;
    for (std::size_t c : cols) {
        reps.push_back(cycle_notation(t.partitions()[c]));
        w = std::max(w, reps.back().size());
    }
    std::size_t label_w = 6;
    for (const auto& l : t.partitions()) label_w = std::max(label_w, l.to_string().size());
    w += 2;
    label_w += 2;

    os << "Character table of S_" << t.n() << " (" << p << " classes)\n";
    os << std::left << std::setw(static_cast<int>(label_w)) << "class" << std::right;
    for (const auto& r : reps) os << std::setw(static_cast<int>(w)) << r;
    os << '\n';
    os << std::left << std::setw(static_cast<int>(label_w)) << "size" << std::right;
    for (std::size_t c : cols) os << std::setw(static_cast<int>(w)) << t.class_sizes()[c];
    os << '\n';
    for (std::size_t r = 0; r < p; ++r) {
        os << std::left << std::setw(static_cast<int>(label_w)) << t.partitions()[r].to_string() << std::right;
        for (std::size_t c : cols) os << std::setw(static_cast<int>(w)) << t.at(r, c);
        os << '\n';
    }
}

inline void print_report(const ProjectorReport& rep, std::ostream& os) {
    os << "selfcheck n=" << rep.n << " k=" << rep.k << '\n';
    for (const auto& c : rep.checks)
        os << (c.passed ? "PASS " : "FAIL ") << c.name << (c.subject.empty() ? "" : " " + c.subject) << "  ["
           << c.detail << "]\n";
    os << "components:\n";
    std::int64_t total = 0;
    for (const auto& c : rep.components) {
        os << "  " << std::left << std::setw(16) << c.lambda.to_string() << std::right << " dim M=" << c.dim_m
           << " dim S=" << c.dim_s << " dim I=" << c.trace_over_order << (c.vanishing ? "  vanishing" : "") << '\n';
        total += c.trace_over_order;
    }
    os << "total dimension " << total << '\n';
    os << (rep.all_passed() ? "selfcheck PASSED" : "selfcheck FAILED") << '\n';
}

inline ProjectorSet obtain_projectors(int n, int k, const RunConfig& cfg) {
    if (!cfg.cache.empty()) return cached_projectors(cfg.cache, n, k, cfg.build());
    return ProjectorSet::build(n, k, cfg.build());
}

inline DataSeries load_input(const RunConfig& cfg) {
    if (!cfg.manifest.empty() && !cfg.files.empty())
        throw ArgumentError("give either --manifest or input files, not both");
    if (!cfg.manifest.empty()) return io::read_series(io::read_manifest(cfg.manifest));
    if (cfg.files.empty()) throw ArgumentError("no input: give --manifest or one file per variable");
    std::vector<std::filesystem::path> paths(cfg.files.begin(), cfg.files.end());
    return io::read_series(paths);
}

inline std::optional<ReferencePoints> load_refs(const RunConfig& cfg) {
    if (cfg.refs.empty()) return std::nullopt;
    return io::read_refs(cfg.refs);
}

inline void emit(const io::ResultDocument& doc, const RunConfig& cfg, std::ostream& out) {
    const auto fmt = io::parse_format(cfg.format);
    if (cfg.out.empty())
        io::write_result(doc, fmt, out);
    else
        io::write_result(doc, fmt, std::filesystem::path(cfg.out));
}

inline int cmd_table(int n, const RunConfig& cfg, std::ostream& out) {
    check_n(n, cfg.n_max);
    print_character_table(*character_table(n, cfg.n_max), out);
    return kOk;
}

inline int cmd_selfcheck(int n, int k, const RunConfig& cfg, std::ostream& out) {
    try {
        const auto set = obtain_projectors(n, k, cfg);
        print_report(verify_projectors(set), out);
        return kOk;
    } catch (const ProjectorVerificationError& e) {
        print_report(e.report(), out);
        return kVerificationFailed;
    }
}

inline int cmd_transform(const RunConfig& cfg, std::ostream& out) {
    const auto series = load_input(cfg);
    const auto refs = load_refs(cfg);
    const auto set = obtain_projectors(series.variables(), series.dim(), cfg);
    const auto t = sample_covariance_tensor(series, refs, cfg.normalize);
    const auto r = schur_transform(t, set);
    emit(io::make_document(r, series, refs, cfg.normalize), cfg, out);
    return kOk;
}

inline SubsetMode parse_mode(const std::string& s) {
    if (s == "all") return SubsetMode::all;
    if (s == "seq" || s == "sequential") return SubsetMode::sequential;
    throw ArgumentError("unknown mode '" + s + "' (expected all or seq)");
}

inline Metric parse_metric(const std::string& s) {
    if (s == "l1" || s == "L1") return Metric::l1;
    if (s == "l2" || s == "L2") return Metric::l2;
    throw ArgumentError("unknown metric '" + s + "' (expected l1 or l2)");
}

inline int cmd_content(int n, const RunConfig& cfg, std::ostream& out) {
    const auto mode = parse_mode(cfg.mode);
    const auto series = load_input(cfg);
    if (n < 1 || n > series.variables())
        throw ArgumentError("-n " + std::to_string(n) + " must lie in [1, " + std::to_string(series.variables()) + "]");
    ContentOptions opts;
    opts.refs = load_refs(cfg);
    opts.normalize = cfg.normalize;
    opts.build = cfg.build();
    const auto set = obtain_projectors(n, series.dim(), cfg);
    const auto content = schur_content(series, n, mode, opts, set);
    emit(io::make_document(content, opts.refs), cfg, out);
    return kOk;
}

inline void write_classification(const Classification& c, const std::string& format, std::ostream& os) {
    if (format == "struct" || format == "json") {
        nlohmann::json j;
        j["label"] = c.label;
        j["tie"] = c.tie;
        j["metric"] = to_string(c.metric);
        j["n"] = c.n;
        std::vector<std::string> parts;
        for (const auto& p : c.partitions) parts.push_back(p.to_string());
        j["partitions"] = parts;
        for (const auto& s : c.scores)
            j["scores"].push_back({{"label", s.label},
                                   {"l1", s.l1},
                                   {"l2", s.l2},
                                   {"content_means", s.content_means},
                                   {"augmented_means", s.augmented_means}});
        os << j.dump(2) << '\n';
        return;
    }
    if (format != "table") throw ArgumentError("classify supports --format table or struct");
    std::size_t w = 8;
    for (const auto& s : c.scores) w = std::max(w, s.label.size() + 2);
    os << "Classification  n=" << c.n << " metric=" << to_string(c.metric) << '\n';
    os << std::left << std::setw(static_cast<int>(w)) << "class" << std::right << std::setw(20) << "l1" << std::setw(20)
       << "l2" << '\n';
    for (const auto& s : c.scores)
        os << std::left << std::setw(static_cast<int>(w)) << s.label << std::right << std::setw(20) << io::fmt12(s.l1)
           << std::setw(20) << io::fmt12(s.l2) << '\n';
    os << "chosen " << c.label << (c.tie ? "  (tie, first class in input order)" : "") << '\n';
}

inline int cmd_classify(const std::vector<std::string>& class_specs, const std::string& candidate_file, int n,
                        const RunConfig& cfg, std::ostream& out) {
    const auto metric = parse_metric(cfg.metric);
    std::vector<LabeledGroup> groups;
    for (const auto& entry : class_specs) {
        const auto eq = entry.find('=');
        if (eq == std::string::npos || eq == 0 || eq + 1 == entry.size())
            throw ArgumentError("--class expects LABEL=MANIFEST, got '" + entry + "'");
        groups.push_back({entry.substr(0, eq), io::read_series(io::read_manifest(entry.substr(eq + 1)))});
    }
    const auto candidate = io::read_series(std::vector<std::filesystem::path>{candidate_file});
    ClassifyOptions opts;
    opts.normalize = cfg.normalize;
    opts.build = cfg.build();
    const auto result = classify(groups, candidate, n, metric, opts);
    if (cfg.out.empty()) {
        write_classification(result, cfg.format, out);
    } else {
        std::ofstream f(cfg.out);
        if (!f) throw IoError("cannot open '" + cfg.out + "' for writing");
        write_classification(result, cfg.format, f);
    }
    return kOk;
}

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Schur transform of matched landmark series"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--nmax", cfg.n_max, "Largest supported number of tensor factors")->check(CLI::Range(1, kHardMaxN));
        sub->add_option("--budget", cfg.budget_mib, "Memory budget in MiB (default from SCHUR_BUDGET_MIB or 4096)")
            ->check(CLI::PositiveNumber);
        sub->add_option("--cache", cfg.cache, "Directory for cached projector numerators");
    };
    auto add_data = [&](CLI::App* sub) {
        add_common(sub);
        sub->add_option("files", cfg.files, "One point file per variable");
        sub->add_option("--manifest", cfg.manifest, "Manifest listing one point file per line");
        sub->add_flag("--normalize", cfg.normalize, "Divide the covariance sum by N");
        sub->add_option("--refs", cfg.refs, "Reference points, one row per variable (non-central tensor)");
        sub->add_option("--format", cfg.format, "table | struct | plot-csv")
            ->check(CLI::IsMember({"table", "struct", "json", "plot-csv", "csv"}));
        sub->add_option("--out", cfg.out, "Write the result here instead of stdout");
    };

    int table_n = 0;
    auto* table = app.add_subcommand("table", "Print the character table of S_n");
    table->add_option("n", table_n, "Degree")->required();
    add_common(table);

    int check_n_arg = 0, check_k = 0;
    auto* selfcheck = app.add_subcommand("selfcheck", "Build and verify all projectors for (n, k)");
    selfcheck->add_option("n", check_n_arg, "Number of tensor factors")->required();
    selfcheck->add_option("k", check_k, "Spatial dimension")->required();
    add_common(selfcheck);

    auto* transform = app.add_subcommand("transform", "Schur transform of one series");
    add_data(transform);

    int content_n = 0;
    auto* content = app.add_subcommand("content", "n-factor Schur content of a series");
    add_data(content);
    content->add_option("-n", content_n, "Factor count")->required();
    content->add_option("--mode", cfg.mode, "all | seq")->check(CLI::IsMember({"all", "seq", "sequential"}));

    int classify_n = 0;
    std::vector<std::string> class_specs;
    std::string candidate;
    auto* classify_cmd = app.add_subcommand("classify", "Assign an extra variable to the closest class");
    add_common(classify_cmd);
    classify_cmd->add_option("--class", class_specs, "LABEL=MANIFEST, repeatable")->required();
    classify_cmd->add_option("--candidate", candidate, "Point file of the additional variable")->required();
    classify_cmd->add_option("-n", classify_n, "Factor count")->required();
    classify_cmd->add_option("--metric", cfg.metric, "l1 | l2")->check(CLI::IsMember({"l1", "l2", "L1", "L2"}));
    classify_cmd->add_flag("--normalize", cfg.normalize, "Divide covariance sums by N");
    classify_cmd->add_option("--format", cfg.format, "table | struct")
        ->check(CLI::IsMember({"table", "struct", "json"}));
    classify_cmd->add_option("--out", cfg.out, "Write the result here instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*table) {
            if (table_n < 1 || table_n > std::min(cfg.n_max, kHardMaxN)) {
                err << "error: n = " << table_n << " outside [1, " << std::min(cfg.n_max, kHardMaxN) << "]\n"
                    << table->help();
                return kUsage;
            }
            return cmd_table(table_n, cfg, out);
        }
        if (*selfcheck) return cmd_selfcheck(check_n_arg, check_k, cfg, out);
        if (*transform) return cmd_transform(cfg, out);
        if (*content) return cmd_content(content_n, cfg, out);
        if (*classify_cmd) return cmd_classify(class_specs, candidate, classify_n, cfg, out);
    } catch (const ResourceError& e) {
        err << "resource error: " << e.what() << "\n  required: " << format_mib(e.required_bytes())
            << "\n  available: " << format_mib(e.available_bytes()) << '\n';
        return kResourceError;
    } catch (const InvariantViolation& e) {
        err << "verification failed: " << e.what() << '\n';
        return kVerificationFailed;
    } catch (const RangeError& e) {
        err << "range error: " << e.what() << '\n';
        return kUsage;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    }
    return kUsage;
}

}  // namespace schur::cli
