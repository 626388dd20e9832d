#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "action.hpp"
#include "statistics.hpp"

namespace schur {

/// Relative bound on ||T - sum_lambda T(lambda)|| / max(1, ||T||).
inline constexpr double kReconstructionTolerance = 1e-10;

/// Components of T in the Schur-Weyl decomposition and their norms.
struct SchurResult {
    int n = 0;
    int k = 0;
    std::vector<Partition> partitions;
    std::vector<std::vector<double>> components;
    std::vector<double> amplitudes;
    double tensor_norm = 0.0;
    double residual = 0.0;

    std::size_t index_of(const Partition& lambda) const {
        for (std::size_t i = 0; i < partitions.size(); ++i)
            if (partitions[i] == lambda) return i;
        throw ArgumentError(lambda.to_string() + " is not a partition of " + std::to_string(n));
    }

    double amplitude(const Partition& lambda) const { return amplitudes[index_of(lambda)]; }
    const std::vector<double>& component(const Partition& lambda) const { return components[index_of(lambda)]; }
};

inline double euclidean_norm(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

/// T(lambda) = Num(lambda) T / n!, amplitudes |T(lambda)|, and the
/// reconstruction check T = sum_lambda T(lambda).
inline SchurResult schur_transform(std::span<const double> tensor, const ProjectorSet& projectors) {
    if (tensor.size() != projectors.shape().size())
        throw ArgumentError("tensor length " + std::to_string(tensor.size()) + " does not match k^n = " +
                            std::to_string(projectors.shape().size()));
    SchurResult r;
    r.n = projectors.n();
    r.k = projectors.k();
    r.partitions = projectors.partitions();
    r.tensor_norm = euclidean_norm(tensor);
    std::vector<double> sum(tensor.size(), 0.0);
    for (const auto& p : projectors.projectors()) {
        std::vector<double> comp = p.vanishing() && p.numerator().is_zero() ? std::vector<double>(tensor.size(), 0.0)
                                                                            : p.apply(tensor);
        for (std::size_t i = 0; i < comp.size(); ++i) sum[i] += comp[i];
        r.amplitudes.push_back(euclidean_norm(comp));
        r.components.push_back(std::move(comp));
    }
    for (std::size_t i = 0; i < sum.size(); ++i) sum[i] = tensor[i] - sum[i];
    r.residual = euclidean_norm(sum);
    if (!(r.residual <= kReconstructionTolerance * std::max(1.0, r.tensor_norm)))
        throw InvariantViolation("reconstruction residual " + std::to_string(r.residual) +
                                 " exceeds tolerance for tensor norm " + std::to_string(r.tensor_norm));
    return r;
}

inline SchurResult schur_transform(const CovarianceTensor& t, const ProjectorSet& projectors) {
    if (t.n != projectors.n() || t.k != projectors.k())
        throw ArgumentError("covariance tensor shape (n=" + std::to_string(t.n) + ", k=" + std::to_string(t.k) +
                            ") does not match projectors (n=" + std::to_string(projectors.n()) +
                            ", k=" + std::to_string(projectors.k()) + ")");
    return schur_transform(std::span<const double>(t.values), projectors);
}

inline SchurResult schur_transform(const CovarianceTensor& t, const BuildOptions& opts = {}) {
    return schur_transform(t, ProjectorSet::build(t.n, t.k, opts));
}

enum class SubsetMode { all, sequential };

inline std::string to_string(SubsetMode m) { return m == SubsetMode::all ? "all" : "seq"; }

/// All size-r subsets of {0..m-1} in lexicographic order.
inline std::vector<std::vector<int>> combinations(int m, int r) {
    std::vector<std::vector<int>> out;
    if (r < 0 || r > m) return out;
    std::vector<int> cur(static_cast<std::size_t>(r));
    for (int i = 0; i < r; ++i) cur[static_cast<std::size_t>(i)] = i;
    while (true) {
        out.push_back(cur);
        int i = r - 1;
        while (i >= 0 && cur[static_cast<std::size_t>(i)] == m - r + i) --i;
        if (i < 0) break;
        ++cur[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < r; ++j) cur[static_cast<std::size_t>(j)] = cur[static_cast<std::size_t>(j) - 1] + 1;
    }
    return out;
}

inline std::vector<std::vector<int>> consecutive_windows(int m, int r) {
    std::vector<std::vector<int>> out;
    for (int s = 0; s + r <= m; ++s) {
        std::vector<int> w(static_cast<std::size_t>(r));
        for (int i = 0; i < r; ++i) w[static_cast<std::size_t>(i)] = s + i;
        out.push_back(std::move(w));
    }
    return out;
}

/// Distribution of amplitudes over n-element subsets of m variables.
struct SchurContent {
    int n = 0;
    int m = 0;
    int k = 0;
    int samples = 0;
    SubsetMode mode = SubsetMode::all;
    bool normalized = false;
    bool central = true;
    std::vector<std::string> labels;          // the m variables
    std::vector<Partition> partitions;
    std::vector<std::vector<int>> subsets;    // zero-based member indices
    std::vector<std::vector<double>> amplitudes;  // [subset][partition]
    std::vector<double> residuals;            // per subset

    std::vector<double> distribution(std::size_t partition) const {
        std::vector<double> out;
        out.reserve(subsets.size());
        for (const auto& row : amplitudes) out.push_back(row[partition]);
        return out;
    }

    std::vector<double> means() const {
        std::vector<double> mu(partitions.size(), 0.0);
        if (amplitudes.empty()) return mu;
        for (const auto& row : amplitudes)
            for (std::size_t l = 0; l < row.size(); ++l) mu[l] += row[l];
        for (double& x : mu) x /= static_cast<double>(amplitudes.size());
        return mu;
    }
};

struct ContentOptions {
    std::optional<ReferencePoints> refs;  // one point per variable of the full series
    bool normalize = false;
    BuildOptions build;
};

namespace detail {

inline void append_subset(SchurContent& c, const DataSeries& series, std::vector<int> members,
                          const std::optional<ReferencePoints>& refs, bool normalize, const ProjectorSet& projectors) {
    std::optional<ReferencePoints> sub_refs;
    if (refs) {
        sub_refs.emplace();
        for (int i : members) sub_refs->push_back((*refs)[static_cast<std::size_t>(i)]);
    }
    const auto t = sample_covariance_tensor(series.select(members), sub_refs, normalize);
    auto r = schur_transform(t, projectors);
    c.amplitudes.push_back(std::move(r.amplitudes));
    c.residuals.push_back(r.residual);
    c.subsets.push_back(std::move(members));
}

}  // namespace detail

/// n-factor Schur content: amplitudes of every n-subset (mode all) or every
/// window of n consecutive variables (mode sequential). Members keep their
/// original relative order.
inline SchurContent schur_content(const DataSeries& series, int n, SubsetMode mode, const ContentOptions& opts,
                                  const ProjectorSet& projectors) {
    const int m = series.variables();
    if (n < 1 || n > m)
        throw ArgumentError("factor count n = " + std::to_string(n) + " must lie in [1, m = " + std::to_string(m) + "]");
    if (projectors.n() != n || projectors.k() != series.dim())
        throw ArgumentError("projector set does not match (n, k)");
    if (opts.refs) check_refs(series, *opts.refs);
    SchurContent c;
    c.n = n;
    c.m = m;
    c.k = series.dim();
    c.samples = series.samples();
    c.mode = mode;
    c.normalized = opts.normalize;
    c.central = !opts.refs;
    c.labels = series.labels();
    c.partitions = projectors.partitions();
    auto subsets = mode == SubsetMode::all ? combinations(m, n) : consecutive_windows(m, n);
    for (auto& s : subsets) detail::append_subset(c, series, std::move(s), opts.refs, opts.normalize, projectors);
    return c;
}

inline SchurContent schur_content(const DataSeries& series, int n, SubsetMode mode, const ContentOptions& opts = {}) {
    if (n < 1 || n > series.variables())
        throw ArgumentError("factor count n = " + std::to_string(n) + " must lie in [1, m = " +
                            std::to_string(series.variables()) + "]");
    return schur_content(series, n, mode, opts, ProjectorSet::build(n, series.dim(), opts.build));
}

// ---------------------------------------------------------------------------
// Classification

enum class Metric { l1, l2 };

inline std::string to_string(Metric m) { return m == Metric::l1 ? "l1" : "l2"; }

struct LabeledGroup {
    std::string label;
    DataSeries series;  // the class's m matched variables
};

struct ClassScore {
    std::string label;
    std::vector<double> content_means;    // means of C per partition
    std::vector<double> augmented_means;  // means of C' per partition
    double l1 = 0.0;
    double l2 = 0.0;

    double score(Metric m) const { return m == Metric::l1 ? l1 : l2; }
};

struct Classification {
    std::string label;
    std::size_t index = 0;
    bool tie = false;
    Metric metric = Metric::l2;
    int n = 0;
    std::vector<Partition> partitions;
    std::vector<ClassScore> scores;
};

struct ClassifyOptions {
    bool normalize = false;
    BuildOptions build;
};

/// Assigns the candidate variable to the class whose n-factor content C is
/// closest (in the mean, per partition) to C', the content of every
/// (n-1)-subset of the class augmented with the candidate as last factor.
inline Classification classify(const std::vector<LabeledGroup>& classes, const DataSeries& candidate, int n,
                               Metric metric, const ClassifyOptions& opts = {}) {
    if (classes.empty()) throw ArgumentError("classify: no classes given");
    if (candidate.variables() != 1)
        throw ArgumentError("classify: candidate must be a single variable, got " +
                            std::to_string(candidate.variables()));
    for (const auto& g : classes) {
        if (g.series.samples() != candidate.samples() || g.series.dim() != candidate.dim())
            throw ArgumentError("classify: candidate has N=" + std::to_string(candidate.samples()) + ", k=" +
                                std::to_string(candidate.dim()) + " but class '" + g.label + "' has N=" +
                                std::to_string(g.series.samples()) + ", k=" + std::to_string(g.series.dim()));
        if (g.series.variables() < n)
            throw ArgumentError("classify: class '" + g.label + "' has " + std::to_string(g.series.variables()) +
                                " variables, fewer than n = " + std::to_string(n));
    }
    if (n < 1) throw ArgumentError("classify: n must be positive");

    const auto projectors = ProjectorSet::build(n, candidate.dim(), opts.build);
    Classification out;
    out.metric = metric;
    out.n = n;
    out.partitions = projectors.partitions();

    ContentOptions copts;
    copts.normalize = opts.normalize;
    copts.build = opts.build;
    for (const auto& g : classes) {
        ClassScore s;
        s.label = g.label;
        s.content_means = schur_content(g.series, n, SubsetMode::all, copts, projectors).means();

        const DataSeries joined = g.series.concat(candidate);
        const int cand = g.series.variables();
        SchurContent aug;
        aug.partitions = projectors.partitions();
        for (auto members : combinations(g.series.variables(), n - 1)) {
            members.push_back(cand);
            detail::append_subset(aug, joined, std::move(members), std::nullopt, opts.normalize, projectors);
        }
        s.augmented_means = aug.means();
        for (std::size_t l = 0; l < s.content_means.size(); ++l) {
            const double d = s.content_means[l] - s.augmented_means[l];
            s.l1 += std::abs(d);
            s.l2 += d * d;
        }
        s.l2 = std::sqrt(s.l2);
        out.scores.push_back(std::move(s));
    }

    std::size_t best = 0;
    for (std::size_t i = 1; i < out.scores.size(); ++i)
        if (out.scores[i].score(metric) < out.scores[best].score(metric)) best = i;
    for (std::size_t i = 0; i < out.scores.size(); ++i)
        if (i != best && out.scores[i].score(metric) == out.scores[best].score(metric)) out.tie = true;
    out.index = best;
    out.label = out.scores[best].label;
    return out;
}

}  // namespace schur
