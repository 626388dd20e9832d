#pragma once

// Landmark-file ingestion and result documents.
//
// Input: one file per variable (timepoint), N rows of k numbers separated
// by whitespace and/or single commas; '#' comment lines and blank lines are
// skipped. A manifest lists one file path per line (relative paths resolve
// against the manifest's directory), optionally followed by a tab and a
// label.
//
// Output: a fixed-width table, a JSON document holding every field, or
// plot-csv with one row per (partition, subset).

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "transform.hpp"

namespace schur::io {

namespace fs = std::filesystem;

struct Manifest {
    std::vector<fs::path> paths;
    std::vector<std::string> labels;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
    const auto* ws = " \t\r\n\v\f";
    const auto b = s.find_first_not_of(ws);
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(ws);
    return s.substr(b, e - b + 1);
}

inline bool skippable(std::string_view line) {
    auto t = trim(line);
    return t.empty() || t.front() == '#';
}

inline std::string where(const fs::path& file, std::size_t line) {
    return file.string() + ":" + std::to_string(line);
}

/// Strict, locale-independent decimal parse of one token.
inline double parse_number(std::string_view tok, const fs::path& file, std::size_t line) {
    std::string_view body = tok;
    if (!body.empty() && body.front() == '+') body.remove_prefix(1);
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(body.data(), body.data() + body.size(), v);
    if (body.empty() || ec != std::errc() || ptr != body.data() + body.size())
        throw DataError(where(file, line) + ": not a number: '" + std::string(tok) + "'");
    if (!std::isfinite(v)) throw DataError(where(file, line) + ": non-finite value '" + std::string(tok) + "'");
    return v;
}

/// Fields split on commas, each comma field split on whitespace. Empty
/// comma fields ("1,,2", trailing comma) are errors.
inline std::vector<double> parse_row(std::string_view line, const fs::path& file, std::size_t lineno) {
    std::vector<double> out;
    const bool has_comma = line.find(',') != std::string_view::npos;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        auto field = line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
        auto t = trim(field);
        if (t.empty() && has_comma) throw DataError(where(file, lineno) + ": empty field");
        std::size_t p = 0;
        while (p < t.size()) {
            while (p < t.size() && std::isspace(static_cast<unsigned char>(t[p]))) ++p;
            std::size_t q = p;
            while (q < t.size() && !std::isspace(static_cast<unsigned char>(t[q]))) ++q;
            if (q > p) out.push_back(parse_number(t.substr(p, q - p), file, lineno));
            p = q;
        }
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

inline std::ifstream open_in(const fs::path& p) {
    std::ifstream in(p);
    if (!in) throw IoError("cannot open '" + p.string() + "' for reading");
    return in;
}

}  // namespace detail

/// Rows of a point file; every row must have the same column count.
inline std::vector<std::vector<double>> read_points(const fs::path& file) {
    auto in = detail::open_in(file);
    std::vector<std::vector<double>> rows;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (detail::skippable(line)) continue;
        auto row = detail::parse_row(line, file, lineno);
        if (!rows.empty() && row.size() != rows.front().size())
            throw DataError(detail::where(file, lineno) + ": row has " + std::to_string(row.size()) +
                            " columns, expected " + std::to_string(rows.front().size()));
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw DataError(file.string() + ": no data rows");
    return rows;
}

inline Manifest read_manifest(const fs::path& file) {
    auto in = detail::open_in(file);
    Manifest m;
    std::string line;
    std::size_t lineno = 0;
    const fs::path base = file.parent_path();
    while (std::getline(in, line)) {
        ++lineno;
        if (detail::skippable(line)) continue;
        std::string_view sv = line;
        std::string label;
        if (auto tab = sv.find('\t'); tab != std::string_view::npos) {
            label = std::string(detail::trim(sv.substr(tab + 1)));
            sv = sv.substr(0, tab);
        }
        fs::path p{std::string(detail::trim(sv))};
        if (p.is_relative()) p = base / p;
        m.paths.push_back(p);
        m.labels.push_back(label.empty() ? p.stem().string() : label);
    }
    if (m.paths.empty()) throw DataError(file.string() + ": manifest lists no files");
    return m;
}

/// One variable per file, in the order given; k is the column count.
inline DataSeries read_series(const std::vector<fs::path>& files, std::vector<std::string> labels = {}) {
    if (files.empty()) throw ArgumentError("no input files");
    std::vector<std::vector<std::vector<double>>> per_file;
    for (const auto& f : files) per_file.push_back(read_points(f));
    const auto rows = per_file.front().size();
    const auto cols = per_file.front().front().size();
    for (std::size_t i = 1; i < files.size(); ++i) {
        if (per_file[i].size() != rows)
            throw DataError(files[i].string() + ": " + std::to_string(per_file[i].size()) + " rows, but " +
                            files.front().string() + " has " + std::to_string(rows));
        if (per_file[i].front().size() != cols)
            throw DataError(files[i].string() + ": " + std::to_string(per_file[i].front().size()) +
                            " columns, but " + files.front().string() + " has " + std::to_string(cols));
    }
    if (labels.empty())
        for (const auto& f : files) labels.push_back(f.stem().string());
    std::vector<double> flat;
    flat.reserve(rows * files.size() * cols);
    for (std::size_t j = 0; j < rows; ++j)
        for (std::size_t i = 0; i < files.size(); ++i)
            flat.insert(flat.end(), per_file[i][j].begin(), per_file[i][j].end());
    return DataSeries(static_cast<int>(rows), static_cast<int>(files.size()), static_cast<int>(cols), std::move(flat),
                      std::move(labels));
}

inline DataSeries read_series(const Manifest& m) { return read_series(m.paths, m.labels); }

/// Reference points: one row of k numbers per variable.
inline ReferencePoints read_refs(const fs::path& file) { return read_points(file); }

// ---------------------------------------------------------------------------
// Result documents

/// 12 significant digits.
inline std::string fmt12(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

struct ResultEntry {
    int subset_id = 0;
    std::vector<int> members;  // zero-based variable indices
    std::vector<double> amplitudes;
    double residual = 0.0;

    friend bool operator==(const ResultEntry&, const ResultEntry&) = default;
};

/// Self-describing record of a transform or content run.
struct ResultDocument {
    std::string kind = "transform";  // "transform" | "content"
    int n = 0;
    int k = 0;
    int samples = 0;
    int m = 0;
    std::string mode = "all";
    bool normalize = false;
    bool central = true;
    std::vector<std::vector<double>> refs;  // empty when centered at the means
    std::vector<std::string> labels;
    std::vector<std::string> partitions;
    std::vector<std::int64_t> dim_m;
    std::vector<std::int64_t> dim_s;
    std::vector<ResultEntry> entries;
    double tensor_norm = 0.0;  // transform only

    friend bool operator==(const ResultDocument&, const ResultDocument&) = default;
};

inline void fill_dimensions(ResultDocument& d, const std::vector<Partition>& parts) {
    for (const auto& p : parts) {
        d.partitions.push_back(p.to_string());
        d.dim_m.push_back(hook_length_dimension(p));
        d.dim_s.push_back(schur_functor_dimension(p, d.k));
    }
}

inline ResultDocument make_document(const SchurResult& r, const DataSeries& series,
                                    const std::optional<ReferencePoints>& refs = std::nullopt,
                                    bool normalize = false) {
    ResultDocument d;
    d.kind = "transform";
    d.n = r.n;
    d.k = r.k;
    d.samples = series.samples();
    d.m = series.variables();
    d.mode = "all";
    d.normalize = normalize;
    d.central = !refs;
    if (refs) d.refs = *refs;
    d.labels = series.labels();
    fill_dimensions(d, r.partitions);
    ResultEntry e;
    e.subset_id = 1;
    for (int i = 0; i < r.n; ++i) e.members.push_back(i);
    e.amplitudes = r.amplitudes;
    e.residual = r.residual;
    d.entries.push_back(std::move(e));
    d.tensor_norm = r.tensor_norm;
    return d;
}

inline ResultDocument make_document(const SchurContent& c, const std::optional<ReferencePoints>& refs = std::nullopt) {
    ResultDocument d;
    d.kind = "content";
    d.n = c.n;
    d.k = c.k;
    d.samples = c.samples;
    d.m = c.m;
    d.mode = to_string(c.mode);
    d.normalize = c.normalized;
    d.central = c.central;
    if (refs) d.refs = *refs;
    d.labels = c.labels;
    fill_dimensions(d, c.partitions);
    for (std::size_t s = 0; s < c.subsets.size(); ++s)
        d.entries.push_back({static_cast<int>(s + 1), c.subsets[s], c.amplitudes[s], c.residuals[s]});
    return d;
}

inline nlohmann::json to_json(const ResultDocument& d) {
    nlohmann::json j;
    j["kind"] = d.kind;
    j["n"] = d.n;
    j["k"] = d.k;
    j["samples"] = d.samples;
    j["m"] = d.m;
    j["mode"] = d.mode;
    j["normalize"] = d.normalize;
    j["central"] = d.central;
    j["refs"] = d.refs;
    j["labels"] = d.labels;
    j["partitions"] = d.partitions;
    j["dim_m"] = d.dim_m;
    j["dim_s"] = d.dim_s;
    j["tensor_norm"] = d.tensor_norm;
    auto& entries = j["entries"] = nlohmann::json::array();
    for (const auto& e : d.entries)
        entries.push_back({{"subset_id", e.subset_id}, {"members", e.members}, {"amplitudes", e.amplitudes},
                           {"residual", e.residual}});
    return j;
}

inline ResultDocument from_json(const nlohmann::json& j) {
    try {
        ResultDocument d;
        d.kind = j.at("kind").get<std::string>();
        d.n = j.at("n").get<int>();
        d.k = j.at("k").get<int>();
        d.samples = j.at("samples").get<int>();
        d.m = j.at("m").get<int>();
        d.mode = j.at("mode").get<std::string>();
        d.normalize = j.at("normalize").get<bool>();
        d.central = j.at("central").get<bool>();
        d.refs = j.at("refs").get<std::vector<std::vector<double>>>();
        d.labels = j.at("labels").get<std::vector<std::string>>();
        d.partitions = j.at("partitions").get<std::vector<std::string>>();
        d.dim_m = j.at("dim_m").get<std::vector<std::int64_t>>();
        d.dim_s = j.at("dim_s").get<std::vector<std::int64_t>>();
        d.tensor_norm = j.at("tensor_norm").get<double>();
        for (const auto& e : j.at("entries"))
            d.entries.push_back({e.at("subset_id").get<int>(), e.at("members").get<std::vector<int>>(),
                                 e.at("amplitudes").get<std::vector<double>>(), e.at("residual").get<double>()});
        return d;
    } catch (const nlohmann::json::exception& e) {
        throw DataError(std::string("malformed result document: ") + e.what());
    }
}

inline ResultDocument parse_document(std::string_view text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw DataError(std::string("malformed result document: ") + e.what());
    }
    return from_json(j);
}

inline std::string member_string(const ResultDocument& d, const std::vector<int>& members) {
    std::string s;
    for (std::size_t i = 0; i < members.size(); ++i) {
        if (i) s += ' ';
        const auto idx = static_cast<std::size_t>(members[i]);
        s += idx < d.labels.size() ? d.labels[idx] : std::to_string(members[i] + 1);
    }
    return s;
}

inline std::string csv_quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

/// partition,subset_id,members,amplitude
inline void write_plot_csv(const ResultDocument& d, std::ostream& os) {
    os << "partition,subset_id,members,amplitude\n";
    for (std::size_t l = 0; l < d.partitions.size(); ++l)
        for (const auto& e : d.entries)
            os << csv_quote(d.partitions[l]) << ',' << e.subset_id << ',' << csv_quote(member_string(d, e.members))
               << ',' << fmt12(e.amplitudes[l]) << '\n';
}

inline void write_table(const ResultDocument& d, std::ostream& os) {
    os << (d.kind == "content" ? "Schur content" : "Schur transform") << "  n=" << d.n << " k=" << d.k
       << " N=" << d.samples;
    if (d.kind == "content") os << " m=" << d.m << " mode=" << d.mode << " subsets=" << d.entries.size();
    os << " normalize=" << (d.normalize ? "on" : "off") << " centering=" << (d.central ? "mean" : "reference")
       << '\n';
    std::size_t w = 9;
    for (const auto& p : d.partitions) w = std::max(w, p.size() + 2);
    if (d.kind == "transform") {
        os << std::left << std::setw(static_cast<int>(w)) << "partition" << std::right << std::setw(8) << "dim M"
           << std::setw(10) << "dim S" << std::setw(22) << "amplitude" << '\n';
        for (std::size_t l = 0; l < d.partitions.size(); ++l)
            os << std::left << std::setw(static_cast<int>(w)) << d.partitions[l] << std::right << std::setw(8)
               << d.dim_m[l] << std::setw(10) << d.dim_s[l] << std::setw(22) << fmt12(d.entries.front().amplitudes[l])
               << '\n';
        os << "tensor norm " << fmt12(d.tensor_norm) << "  residual " << fmt12(d.entries.front().residual) << '\n';
        return;
    }
    os << std::left << std::setw(static_cast<int>(w)) << "partition" << std::right << std::setw(7) << "count"
       << std::setw(20) << "mean" << std::setw(20) << "min" << std::setw(20) << "max" << '\n';
    double worst = 0.0;
    for (const auto& e : d.entries) worst = std::max(worst, e.residual);
    for (std::size_t l = 0; l < d.partitions.size(); ++l) {
        double mean = 0.0, lo = INFINITY, hi = -INFINITY;
        for (const auto& e : d.entries) {
            mean += e.amplitudes[l];
            lo = std::min(lo, e.amplitudes[l]);
            hi = std::max(hi, e.amplitudes[l]);
        }
        if (!d.entries.empty()) mean /= static_cast<double>(d.entries.size());
        os << std::left << std::setw(static_cast<int>(w)) << d.partitions[l] << std::right << std::setw(7)
           << d.entries.size() << std::setw(20) << fmt12(mean) << std::setw(20) << fmt12(lo) << std::setw(20)
           << fmt12(hi) << '\n';
    }
    os << "max residual " << fmt12(worst) << '\n';
}

enum class Format { table, structured, plot_csv };

inline Format parse_format(std::string_view s) {
    if (s == "table") return Format::table;
    if (s == "struct" || s == "json") return Format::structured;
    if (s == "plot-csv" || s == "csv") return Format::plot_csv;
    throw ArgumentError("unknown format '" + std::string(s) + "' (expected table, struct or plot-csv)");
}

/// The structured format writes doubles in shortest round-trip form so a
/// parsed document compares equal to the original.
inline void write_result(const ResultDocument& d, Format f, std::ostream& os) {
    switch (f) {
    case Format::table: write_table(d, os); break;
    case Format::structured: os << to_json(d).dump(2) << '\n'; break;
    case Format::plot_csv: write_plot_csv(d, os); break;
    }
    if (!os) throw IoError("failed writing result");
}

inline void write_result(const ResultDocument& d, Format f, const fs::path& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    write_result(d, f, out);
    out.flush();
    if (!out) throw IoError("failed writing '" + path.string() + "'");
}

}  // namespace schur::io
