#pragma once

// On-disk cache of projector numerators, one text file per partition:
//
//   schur-projector n=<n> k=<k> lambda=<(p1,p2,...)> denominator=<n!> nnz=<count>
//   <row> <col> <value>        (nnz lines, zero-based, row-major)
//
// A loaded family must satisfy sum_lambda Num(lambda) = n! I exactly.

#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>

#include "action.hpp"

namespace schur {

namespace fs = std::filesystem;

inline fs::path projector_cache_file(const fs::path& dir, const Partition& lambda, int k) {
    std::string name = "projector_n" + std::to_string(lambda.n()) + "_k" + std::to_string(k) + "_";
    for (std::size_t i = 0; i < lambda.parts().size(); ++i) {
        if (i) name += '-';
        name += std::to_string(lambda.parts()[i]);
    }
    return dir / (name + ".txt");
}

inline void save_projector(const fs::path& file, const IsotypicProjector& p) {
    std::ofstream out(file);
    if (!out) throw IoError("cannot write projector cache '" + file.string() + "'");
    const auto& m = p.numerator();
    out << "schur-projector n=" << p.n() << " k=" << p.k() << " lambda=" << p.partition().to_string()
        << " denominator=" << p.denominator() << " nnz=" << m.nnz() << '\n';
    for (std::size_t r = 0; r < m.rows(); ++r) {
        auto cols = m.row_cols(r);
        auto vals = m.row_values(r);
        for (std::size_t i = 0; i < cols.size(); ++i) out << r << ' ' << cols[i] << ' ' << vals[i] << '\n';
    }
    if (!out) throw IoError("failed writing projector cache '" + file.string() + "'");
}

inline void save_projectors(const fs::path& dir, const ProjectorSet& set) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError("cannot create cache directory '" + dir.string() + "': " + ec.message());
    for (const auto& p : set.projectors()) save_projector(projector_cache_file(dir, p.partition(), set.k()), p);
}

inline IsotypicProjector load_projector(const fs::path& file, const Partition& lambda, int k) {
    std::ifstream in(file);
    if (!in) throw IoError("cannot open projector cache '" + file.string() + "'");
    std::string header;
    std::getline(in, header);
    std::ostringstream expect;
    expect << "schur-projector n=" << lambda.n() << " k=" << k << " lambda=" << lambda.to_string()
           << " denominator=" << factorial(lambda.n()) << " nnz=";
    if (header.rfind(expect.str(), 0) != 0) throw DataError(file.string() + ": unexpected header '" + header + "'");
    std::size_t nnz = 0;
    try {
        nnz = std::stoull(header.substr(expect.str().size()));
    } catch (const std::exception&) {
        throw DataError(file.string() + ": bad nnz in header");
    }
    const TensorShape shape(lambda.n(), k);
    SparseMatrix m(shape.size(), shape.size());
    std::vector<SparseMatrix::Entry> row;
    std::size_t current = 0;
    std::size_t r = 0, c = 0;
    long long v = 0;
    std::size_t seen = 0;
    auto flush_to = [&](std::size_t target) {
        while (current < target) {
            m.append_row(row);
            row.clear();
            ++current;
        }
    };
    try {
        while (in >> r >> c >> v) {
            if (r >= shape.size() || r < current) throw DataError(file.string() + ": rows out of order or range");
            flush_to(r);
            row.push_back({static_cast<SparseMatrix::Index>(c), v});
            ++seen;
        }
        if (!in.eof()) throw DataError(file.string() + ": malformed triple after entry " + std::to_string(seen));
        flush_to(shape.size());
    } catch (const ArgumentError& e) {
        throw DataError(file.string() + ": " + e.what());
    }
    if (seen != nnz) throw DataError(file.string() + ": header promises " + std::to_string(nnz) + " entries, found " +
                                     std::to_string(seen));
    return IsotypicProjector(lambda, k, std::move(m));
}

/// The cached family for (n, k), or nullopt when any file is missing.
/// Throws DataError if the files exist but fail the integrity check.
inline std::optional<ProjectorSet> load_projectors(const fs::path& dir, int n, int k) {
    auto table = character_table(n, kHardMaxN);
    std::vector<IsotypicProjector> projs;
    for (const auto& lambda : table->partitions()) {
        auto file = projector_cache_file(dir, lambda, k);
        if (!fs::exists(file)) return std::nullopt;
        projs.push_back(load_projector(file, lambda, k));
    }
    ProjectorSet set(n, k, std::move(projs));
    const std::size_t dim = set.shape().size();
    SparseMatrix sum = SparseMatrix::zero(dim, dim);
    for (const auto& p : set.projectors()) sum = sum + p.numerator();
    if (!(sum == SparseMatrix::identity(dim, factorial(n))))
        throw DataError("projector cache in '" + dir.string() + "' for n=" + std::to_string(n) + ", k=" +
                        std::to_string(k) + " fails the resolution-of-identity check");
    return set;
}

/// Loads from dir when present and valid, otherwise builds and stores.
inline ProjectorSet cached_projectors(const fs::path& dir, int n, int k, const BuildOptions& opts = {}) {
    check_budget(n, k, opts.budget_bytes, opts.threads);
    check_n(n, opts.n_max);
    if (auto set = load_projectors(dir, n, k)) return std::move(*set);
    auto set = ProjectorSet::build(n, k, opts);
    save_projectors(dir, set);
    return set;
}

}  // namespace schur
