#pragma once

#include <cmath>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "action.hpp"
#include "error.hpp"

namespace schur {

/// Matched samples of n vector variables: value(j, i, a) is coordinate a of
/// variable i (e.g. a timepoint) in sample j (e.g. a landmark).
class DataSeries {
public:
    DataSeries() = default;

    DataSeries(int samples, int variables, int dim, std::vector<double> values, std::vector<std::string> labels = {})
        : samples_(samples), variables_(variables), dim_(dim), values_(std::move(values)), labels_(std::move(labels)) {
        if (samples < 1 || variables < 1 || dim < 1)
            throw ArgumentError("data series needs at least one sample, variable and coordinate");
        if (values_.size() != static_cast<std::size_t>(samples) * variables * dim)
            throw ArgumentError("data series value count does not match N * n * k");
        for (std::size_t p = 0; p < values_.size(); ++p) {
            if (!std::isfinite(values_[p])) {
                const auto j = p / (static_cast<std::size_t>(variables) * dim);
                const auto i = (p / dim) % variables;
                throw DataError("non-finite value at sample " + std::to_string(j + 1) + ", variable " +
                                std::to_string(i + 1));
            }
        }
        if (labels_.empty()) {
            for (int i = 0; i < variables; ++i) labels_.push_back(std::to_string(i + 1));
        } else if (labels_.size() != static_cast<std::size_t>(variables)) {
            throw ArgumentError("one label per variable expected");
        }
    }

    /// From nested[j][i][a]; every (j, i) must carry the same number of coordinates.
    static DataSeries from_nested(const std::vector<std::vector<std::vector<double>>>& nested,
                                  std::vector<std::string> labels = {}) {
        if (nested.empty() || nested.front().empty() || nested.front().front().empty())
            throw ArgumentError("data series needs at least one sample, variable and coordinate");
        const auto n = nested.front().size();
        const auto k = nested.front().front().size();
        std::vector<double> flat;
        flat.reserve(nested.size() * n * k);
        for (std::size_t j = 0; j < nested.size(); ++j) {
            if (nested[j].size() != n) throw ArgumentError("sample " + std::to_string(j + 1) + " has the wrong variable count");
            for (std::size_t i = 0; i < n; ++i) {
                if (nested[j][i].size() != k)
                    throw ArgumentError("sample " + std::to_string(j + 1) + ", variable " + std::to_string(i + 1) +
                                        " has the wrong dimension");
                flat.insert(flat.end(), nested[j][i].begin(), nested[j][i].end());
            }
        }
        return DataSeries(static_cast<int>(nested.size()), static_cast<int>(n), static_cast<int>(k), std::move(flat),
                          std::move(labels));
    }

    int samples() const noexcept { return samples_; }
    int variables() const noexcept { return variables_; }
    int dim() const noexcept { return dim_; }
    const std::vector<std::string>& labels() const noexcept { return labels_; }
    std::span<const double> values() const noexcept { return values_; }

    double at(int j, int i, int a) const { return values_[offset(j, i, a)]; }
    double& at(int j, int i, int a) { return values_[offset(j, i, a)]; }

    std::span<const double> point(int j, int i) const { return {values_.data() + offset(j, i, 0), static_cast<std::size_t>(dim_)}; }

    /// Variables listed in vars, in the order given.
    DataSeries select(std::span<const int> vars) const {
        if (vars.empty()) throw ArgumentError("select: no variables requested");
        std::vector<double> out;
        out.reserve(static_cast<std::size_t>(samples_) * vars.size() * dim_);
        std::vector<std::string> labels;
        for (int i : vars) {
            if (i < 0 || i >= variables_) throw ArgumentError("select: variable index out of range");
            labels.push_back(labels_[static_cast<std::size_t>(i)]);
        }
        for (int j = 0; j < samples_; ++j)
            for (int i : vars) {
                auto p = point(j, i);
                out.insert(out.end(), p.begin(), p.end());
            }
        return DataSeries(samples_, static_cast<int>(vars.size()), dim_, std::move(out), std::move(labels));
    }

    /// The variables of this series followed by those of other.
    DataSeries concat(const DataSeries& other) const {
        if (other.samples_ != samples_ || other.dim_ != dim_)
            throw ArgumentError("concat: series disagree on sample count or dimension (" + std::to_string(samples_) +
                                "x" + std::to_string(dim_) + " vs " + std::to_string(other.samples_) + "x" +
                                std::to_string(other.dim_) + ")");
        std::vector<double> out;
        out.reserve(values_.size() + other.values_.size());
        for (int j = 0; j < samples_; ++j) {
            for (int i = 0; i < variables_; ++i) {
                auto p = point(j, i);
                out.insert(out.end(), p.begin(), p.end());
            }
            for (int i = 0; i < other.variables_; ++i) {
                auto p = other.point(j, i);
                out.insert(out.end(), p.begin(), p.end());
            }
        }
        auto labels = labels_;
        labels.insert(labels.end(), other.labels_.begin(), other.labels_.end());
        return DataSeries(samples_, variables_ + other.variables_, dim_, std::move(out), std::move(labels));
    }

    friend bool operator==(const DataSeries&, const DataSeries&) = default;

private:
    std::size_t offset(int j, int i, int a) const {
        return (static_cast<std::size_t>(j) * variables_ + static_cast<std::size_t>(i)) * dim_ + static_cast<std::size_t>(a);
    }

    int samples_ = 0;
    int variables_ = 0;
    int dim_ = 0;
    std::vector<double> values_;
    std::vector<std::string> labels_;
};

/// One k-vector per variable.
using ReferencePoints = std::vector<std::vector<double>>;

inline ReferencePoints sample_means(const DataSeries& s) {
    ReferencePoints means(static_cast<std::size_t>(s.variables()), std::vector<double>(static_cast<std::size_t>(s.dim()), 0.0));
    for (int i = 0; i < s.variables(); ++i)
        for (int a = 0; a < s.dim(); ++a) {
            double acc = 0.0;
            for (int j = 0; j < s.samples(); ++j) acc += s.at(j, i, a);
            means[static_cast<std::size_t>(i)][static_cast<std::size_t>(a)] = acc / s.samples();
        }
    return means;
}

inline void check_refs(const DataSeries& s, const ReferencePoints& refs) {
    if (refs.size() != static_cast<std::size_t>(s.variables()))
        throw ArgumentError("expected " + std::to_string(s.variables()) + " reference points, got " +
                            std::to_string(refs.size()));
    for (std::size_t i = 0; i < refs.size(); ++i) {
        if (refs[i].size() != static_cast<std::size_t>(s.dim()))
            throw ArgumentError("reference point " + std::to_string(i + 1) + " has dimension " +
                                std::to_string(refs[i].size()) + ", expected " + std::to_string(s.dim()));
        for (double x : refs[i])
            if (!std::isfinite(x)) throw DataError("non-finite reference point " + std::to_string(i + 1));
    }
}

/// Subtracts per-variable reference points, or the sample means when none
/// are given (the non-central variant uses the supplied points).
inline DataSeries center(const DataSeries& s, const std::optional<ReferencePoints>& refs = std::nullopt) {
    if (refs) check_refs(s, *refs);
    const ReferencePoints offsets = refs ? *refs : sample_means(s);
    DataSeries out = s;
    for (int j = 0; j < s.samples(); ++j)
        for (int i = 0; i < s.variables(); ++i)
            for (int a = 0; a < s.dim(); ++a)
                out.at(j, i, a) -= offsets[static_cast<std::size_t>(i)][static_cast<std::size_t>(a)];
    return out;
}

/// Dense element of (R^k)^{⊗n} in lexicographic index order, with the
/// centering that produced it.
struct CovarianceTensor {
    int n = 0;
    int k = 0;
    int samples = 0;
    std::vector<double> values;
    ReferencePoints centers;
    bool central = true;     // centers are sample means
    bool normalized = false; // divided by N

    double norm() const {
        double s = 0.0;
        for (double v : values) s += v * v;
        return std::sqrt(s);
    }
};

/// T[a_1..a_n] = sum_j prod_i (v^j_{i a_i} - c_{i a_i}); divided by N when
/// normalize is set.
inline CovarianceTensor sample_covariance_tensor(const DataSeries& s,
                                                 const std::optional<ReferencePoints>& refs = std::nullopt,
                                                 bool normalize = false) {
    const TensorShape shape(s.variables(), s.dim());
    if (refs) check_refs(s, *refs);
    CovarianceTensor t;
    t.n = s.variables();
    t.k = s.dim();
    t.samples = s.samples();
    t.central = !refs;
    t.normalized = normalize;
    t.centers = refs ? *refs : sample_means(s);
    t.values.assign(shape.size(), 0.0);

    const auto k = static_cast<std::size_t>(s.dim());
    std::vector<double> cur, next;
    cur.reserve(shape.size());
    next.reserve(shape.size());
    std::vector<double> x(k);
    for (int j = 0; j < s.samples(); ++j) {
        cur.assign(1, 1.0);
        for (int i = 0; i < s.variables(); ++i) {
            for (std::size_t a = 0; a < k; ++a)
                x[a] = s.at(j, i, static_cast<int>(a)) - t.centers[static_cast<std::size_t>(i)][a];
            next.resize(cur.size() * k);
            for (std::size_t p = 0; p < cur.size(); ++p)
                for (std::size_t a = 0; a < k; ++a) next[p * k + a] = cur[p] * x[a];
            cur.swap(next);
        }
        for (std::size_t p = 0; p < cur.size(); ++p) t.values[p] += cur[p];
    }
    if (normalize)
        for (double& v : t.values) v /= s.samples();
    for (double v : t.values)
        if (!std::isfinite(v)) throw DataError("covariance tensor has non-finite entries (overflow in the input scale)");
    return t;
}

/// Covariance tensor of type (l_1..l_n): variable i repeated l_i times.
inline CovarianceTensor typed_covariance_tensor(const DataSeries& s, std::span<const int> type,
                                                const std::optional<ReferencePoints>& refs = std::nullopt,
                                                bool normalize = false, int n_max = kDefaultMaxN) {
    if (type.size() != static_cast<std::size_t>(s.variables()))
        throw ArgumentError("type vector needs one entry per variable");
    int total = 0;
    std::vector<int> expanded;
    for (std::size_t i = 0; i < type.size(); ++i) {
        if (type[i] < 1) throw ArgumentError("type entries must be positive");
        total += type[i];
        for (int r = 0; r < type[i]; ++r) expanded.push_back(static_cast<int>(i));
    }
    if (total > n_max)
        throw RangeError("total order " + std::to_string(total) + " exceeds n_max = " + std::to_string(n_max));
    if (refs) check_refs(s, *refs);
    std::optional<ReferencePoints> expanded_refs;
    if (refs) {
        expanded_refs.emplace();
        for (int i : expanded) expanded_refs->push_back((*refs)[static_cast<std::size_t>(i)]);
    }
    // Centering the repeated copies uses the original variable's mean, which
    // is what the expanded series' own means are.
    return sample_covariance_tensor(s.select(expanded), expanded_refs, normalize);
}

}  // namespace schur
