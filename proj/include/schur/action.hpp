#pragma once

// Permutation action of S_n on (R^k)^{⊗n}, conjugacy-class sums and the
// exact isotypic projectors built from them.
//
// Basis tensors e_{a_1}⊗...⊗e_{a_n} are indexed lexicographically:
// index = sum_i a_i k^{n-1-i} with zero-based a_i.
//
// P(sigma) has, in the row of an input basis tensor, a single 1 in the
// column of the tensor obtained by moving factor i to position sigma(i).
// Under this convention P(sigma) P(tau) = P(tau * sigma); see
// check_composition_convention().

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "characters.hpp"
#include "partitions.hpp"
#include "permutations.hpp"
#include "sparse.hpp"

namespace schur {

inline constexpr std::uint64_t kMiB = 1024ull * 1024ull;
inline constexpr std::uint64_t kDefaultBudgetMiB = 4096;
inline constexpr const char* kBudgetEnvVar = "SCHUR_BUDGET_MIB";

/// Memory budget from SCHUR_BUDGET_MIB, else 4 GiB.
inline std::uint64_t default_budget_bytes() {
    if (const char* env = std::getenv(kBudgetEnvVar)) {
        char* end = nullptr;
        unsigned long long mib = std::strtoull(env, &end, 10);
        if (end != env && *end == '\0' && mib > 0) return mib * kMiB;
    }
    return kDefaultBudgetMiB * kMiB;
}

struct BuildOptions {
    int n_max = kDefaultMaxN;
    std::uint64_t budget_bytes = default_budget_bytes();
    unsigned threads = 0;  // 0: hardware concurrency
};

/// Shape of (R^k)^{⊗n} and its lexicographic index.
class TensorShape {
public:
    TensorShape(int n, int k) : n_(n), k_(k) {
        if (n < 1 || k < 1) throw RangeError("tensor shape needs n >= 1 and k >= 1");
        double d = std::pow(static_cast<double>(k), n);
        if (d > static_cast<double>(UINT32_MAX))
            throw ResourceError("k^n = " + std::to_string(k) + "^" + std::to_string(n) +
                                    " exceeds the 32-bit tensor index range",
                                d * sizeof(double) > 1.8e19 ? UINT64_MAX
                                                            : static_cast<std::uint64_t>(d * sizeof(double)),
                                UINT32_MAX);
        size_ = 1;
        for (int i = 0; i < n; ++i) size_ *= static_cast<std::size_t>(k);
    }

    int n() const noexcept { return n_; }
    int k() const noexcept { return k_; }
    std::size_t size() const noexcept { return size_; }

    std::size_t index(std::span<const int> digits) const {
        std::size_t idx = 0;
        for (int a : digits) idx = idx * static_cast<std::size_t>(k_) + static_cast<std::size_t>(a);
        return idx;
    }

    std::vector<int> digits(std::size_t index) const {
        std::vector<int> d(static_cast<std::size_t>(n_));
        for (int i = n_ - 1; i >= 0; --i) {
            d[static_cast<std::size_t>(i)] = static_cast<int>(index % static_cast<std::size_t>(k_));
            index /= static_cast<std::size_t>(k_);
        }
        return d;
    }

    /// Place values k^{n-1-sigma(i)}: the output index of an input tensor
    /// with digits a is sum_i a_i * weights[i].
    std::vector<std::size_t> action_weights(const Permutation& sigma) const {
        std::vector<std::size_t> pow(static_cast<std::size_t>(n_));
        std::size_t p = 1;
        for (int i = n_ - 1; i >= 0; --i) {
            pow[static_cast<std::size_t>(i)] = p;
            p *= static_cast<std::size_t>(k_);
        }
        std::vector<std::size_t> w(static_cast<std::size_t>(n_));
        for (int i = 0; i < n_; ++i) w[static_cast<std::size_t>(i)] = pow[static_cast<std::size_t>(sigma(i))];
        return w;
    }

    friend bool operator==(const TensorShape&, const TensorShape&) = default;

private:
    int n_;
    int k_;
    std::size_t size_ = 1;
};

/// Sum over compositions of n into k parts of multinomial^2: the number of
/// (row, column) pairs lying in a common S_n-orbit, which bounds the
/// non-zeros of any class sum or projector.
inline double orbit_pair_count(int n, int k) {
    // sum over compositions (a_1..a_k) of n of multinomial(n; a)^2; each
    // multinomial is a product of binomials, exact while below 2^53
    std::vector<std::vector<double>> binom(static_cast<std::size_t>(n) + 1);
    for (int m = 0; m <= n; ++m) {
        binom[static_cast<std::size_t>(m)].assign(static_cast<std::size_t>(m) + 1, 1.0);
        for (int r = 1; r < m; ++r)
            binom[static_cast<std::size_t>(m)][static_cast<std::size_t>(r)] =
                binom[static_cast<std::size_t>(m) - 1][static_cast<std::size_t>(r) - 1] +
                binom[static_cast<std::size_t>(m) - 1][static_cast<std::size_t>(r)];
    }
    double total = 0.0;
    auto rec = [&](auto& self, int slot, int left, double multinomial) -> void {
        if (slot == k - 1) {
            total += multinomial * multinomial;
            return;
        }
        for (int a = 0; a <= left; ++a)
            self(self, slot + 1, left - a,
                 multinomial * binom[static_cast<std::size_t>(left)][static_cast<std::size_t>(a)]);
    };
    rec(rec, 0, n, 1.0);
    return total;
}

inline unsigned resolve_threads(unsigned requested) {
    if (requested) return requested;
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? std::min(hw, 16u) : 1u;
}

/// Upper estimate of peak memory for building every projector of (n, k).
inline std::uint64_t estimate_projector_bytes(int n, int k, unsigned threads = 0) {
    const double rows = std::pow(static_cast<double>(k), n);
    const double pairs = orbit_pair_count(n, k);
    // Partitions with at most k rows give the non-vanishing projectors.
    double nonvanishing = 0.0;
    double partitions = 0.0;
    {
        // p(n) and p_{<=k}(n) by the standard recurrence on largest part.
        std::vector<std::vector<double>> table(static_cast<std::size_t>(n) + 1,
                                               std::vector<double>(static_cast<std::size_t>(n) + 1, 0.0));
        // table[m][j]: partitions of m into at most j parts.
        for (int j = 0; j <= n; ++j) table[0][static_cast<std::size_t>(j)] = 1.0;
        for (int m = 1; m <= n; ++m)
            for (int j = 1; j <= n; ++j)
                table[static_cast<std::size_t>(m)][static_cast<std::size_t>(j)] =
                    table[static_cast<std::size_t>(m)][static_cast<std::size_t>(j) - 1] +
                    (m >= j ? table[static_cast<std::size_t>(m - j)][static_cast<std::size_t>(j)] : 0.0);
        partitions = table[static_cast<std::size_t>(n)][static_cast<std::size_t>(n)];
        nonvanishing = table[static_cast<std::size_t>(n)][static_cast<std::size_t>(std::min(n, k))];
    }
    const double entry = sizeof(SparseMatrix::Index) + sizeof(SparseMatrix::Value);
    const double per_matrix = pairs * entry + (rows + 1) * sizeof(std::uint64_t);
    double order = 1.0;
    for (int i = 2; i <= n; ++i) order *= i;
    const double scratch = static_cast<double>(resolve_threads(threads)) * rows * partitions * sizeof(std::int32_t);
    const double perms = order * n * sizeof(std::size_t);
    // Factor two: per-thread row blocks coexist with the assembled result.
    const double total = 2.0 * nonvanishing * per_matrix + scratch + perms;
    return total > 1.8e19 ? UINT64_MAX : static_cast<std::uint64_t>(total);
}

inline std::string format_mib(std::uint64_t bytes) {
    std::ostringstream os;
    os.setf(std::ios::fixed);
    os.precision(1);
    os << static_cast<double>(bytes) / static_cast<double>(kMiB) << " MiB";
    return os.str();
}

/// Throws ResourceError if building projectors for (n, k) would exceed the budget.
inline void check_budget(int n, int k, std::uint64_t budget_bytes, unsigned threads = 0) {
    const std::uint64_t need = estimate_projector_bytes(n, k, threads);
    if (need > budget_bytes) {
        std::ostringstream os;
        os << "projectors for n=" << n << ", k=" << k << " (tensor dimension k^n = "
           << std::pow(static_cast<double>(k), n) << ") need about " << format_mib(need)
           << " but the memory budget is " << format_mib(budget_bytes)
           << "; raise --budget or SCHUR_BUDGET_MIB, or reduce n or k";
        throw ResourceError(os.str(), need, budget_bytes);
    }
}

/// P(sigma) for the tensor-factor action on (R^k)^{⊗n}.
inline SparseMatrix permutation_matrix(const Permutation& sigma, int k) {
    const TensorShape shape(sigma.n(), k);
    const auto w = shape.action_weights(sigma);
    SparseMatrix m(shape.size(), shape.size());
    for (std::size_t r = 0; r < shape.size(); ++r) {
        const auto d = shape.digits(r);
        std::size_t c = 0;
        for (std::size_t i = 0; i < d.size(); ++i) c += static_cast<std::size_t>(d[i]) * w[i];
        SparseMatrix::Entry e{static_cast<SparseMatrix::Index>(c), 1};
        m.append_row(std::span<const SparseMatrix::Entry>(&e, 1));
    }
    return m;
}

namespace detail {

// Builds, for every coefficient vector coef[m] (one weight per class), the
// matrix sum_c coef[m][c] * S(c), scanning each row once across all classes.
inline std::vector<SparseMatrix> class_combinations(const TensorShape& shape, const std::vector<CycleType>& classes,
                                                    const std::vector<std::vector<std::int64_t>>& coef,
                                                    unsigned threads) {
    const std::size_t nclass = classes.size();
    std::vector<std::vector<std::size_t>> weights;
    std::vector<std::uint32_t> weight_class;
    for (std::size_t c = 0; c < nclass; ++c) {
        for_each_permutation_of_type(classes[c], [&](const Permutation& p) {
            auto w = shape.action_weights(p);
            weights.push_back(std::move(w));
            weight_class.push_back(static_cast<std::uint32_t>(c));
        });
    }

    const std::size_t rows = shape.size();
    const std::size_t nout = coef.size();
    threads = std::max(1u, std::min<unsigned>(resolve_threads(threads), static_cast<unsigned>(std::max<std::size_t>(1, rows / 64))));
    const std::size_t chunk = (rows + threads - 1) / threads;

    std::vector<std::vector<SparseMatrix>> blocks(threads);
    auto work = [&](unsigned t) {
        const std::size_t lo = std::min(rows, t * chunk);
        const std::size_t hi = std::min(rows, lo + chunk);
        std::vector<SparseMatrix> out;
        out.reserve(nout);
        for (std::size_t m = 0; m < nout; ++m) out.emplace_back(hi - lo, rows);
        std::vector<std::int32_t> counts(rows * nclass, 0);
        std::vector<char> seen(rows, 0);
        std::vector<std::size_t> touched;
        std::vector<SparseMatrix::Entry> row;
        for (std::size_t r = lo; r < hi; ++r) {
            const auto d = shape.digits(r);
            touched.clear();
            for (std::size_t p = 0; p < weights.size(); ++p) {
                const auto& w = weights[p];
                std::size_t col = 0;
                for (std::size_t i = 0; i < d.size(); ++i) col += static_cast<std::size_t>(d[i]) * w[i];
                if (!seen[col]) {
                    seen[col] = 1;
                    touched.push_back(col);
                }
                ++counts[col * nclass + weight_class[p]];
            }
            std::sort(touched.begin(), touched.end());
            for (std::size_t m = 0; m < nout; ++m) {
                row.clear();
                for (std::size_t col : touched) {
                    const std::int32_t* slot = &counts[col * nclass];
                    __int128 v = 0;
                    for (std::size_t c = 0; c < nclass; ++c) v += static_cast<__int128>(coef[m][c]) * slot[c];
                    if (v > INT64_MAX || v < INT64_MIN) throw RangeError("projector entry overflows 64 bits");
                    if (v != 0) row.push_back({static_cast<SparseMatrix::Index>(col), static_cast<std::int64_t>(v)});
                }
                out[m].append_row(row);
            }
            for (std::size_t col : touched) {
                std::fill_n(&counts[col * nclass], nclass, 0);
                seen[col] = 0;
            }
        }
        blocks[t] = std::move(out);
    };

    if (threads == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        std::vector<std::exception_ptr> errors(threads);
        for (unsigned t = 0; t < threads; ++t)
            pool.emplace_back([&, t] {
                try {
                    work(t);
                } catch (...) {
                    errors[t] = std::current_exception();
                }
            });
        for (auto& th : pool) th.join();
        for (auto& e : errors)
            if (e) std::rethrow_exception(e);
    }

    std::vector<SparseMatrix> result;
    result.reserve(nout);
    for (std::size_t m = 0; m < nout; ++m) {
        SparseMatrix full(rows, rows);
        for (unsigned t = 0; t < threads; ++t) {
            const SparseMatrix& b = blocks[t][m];
            std::vector<SparseMatrix::Entry> row;
            for (std::size_t r = 0; r < b.rows(); ++r) {
                row.clear();
                auto cols = b.row_cols(r);
                auto vals = b.row_values(r);
                for (std::size_t i = 0; i < cols.size(); ++i) row.push_back({cols[i], vals[i]});
                full.append_row(row);
            }
            blocks[t][m] = SparseMatrix();
        }
        result.push_back(std::move(full));
    }
    return result;
}

}  // namespace detail

/// S(c) = sum of P(sigma) over the permutations of cycle type c.
struct ClassSum {
    CycleType type;
    SparseMatrix matrix;
};

inline ClassSum class_sum(const CycleType& c, int k, const BuildOptions& opts = {}) {
    check_budget(c.n(), k, opts.budget_bytes, opts.threads);
    check_n(c.n(), opts.n_max);
    const TensorShape shape(c.n(), k);
    auto m = detail::class_combinations(shape, {c}, {{1}}, opts.threads);
    return {c, std::move(m.front())};
}

/// pi(lambda) = numerator / n!, with an exact integer numerator.
class IsotypicProjector {
public:
    IsotypicProjector(Partition lambda, int k, SparseMatrix numerator)
        : lambda_(std::move(lambda)), k_(k), denominator_(factorial(lambda_.n())), numerator_(std::move(numerator)) {}

    const Partition& partition() const noexcept { return lambda_; }
    int n() const noexcept { return lambda_.n(); }
    int k() const noexcept { return k_; }
    std::int64_t denominator() const noexcept { return denominator_; }
    const SparseMatrix& numerator() const noexcept { return numerator_; }

    /// True when S^lambda(R^k) = 0, i.e. lambda has more than k rows.
    bool vanishing() const noexcept { return lambda_.length() > k_; }

    /// Expected rank: dim M_lambda * dim S^lambda(R^k).
    std::int64_t expected_rank() const {
        return hook_length_dimension(lambda_) * schur_functor_dimension(lambda_, k_);
    }

    double at(std::size_t r, std::size_t c) const {
        return static_cast<double>(numerator_.at(r, c)) / static_cast<double>(denominator_);
    }

    /// pi(lambda) t: integer numerator applied first, one division at the end.
    std::vector<double> apply(std::span<const double> t) const {
        auto y = numerator_.apply(t);
        const double d = static_cast<double>(denominator_);
        for (double& v : y) v /= d;
        return y;
    }

private:
    Partition lambda_;
    int k_;
    std::int64_t denominator_;
    SparseMatrix numerator_;
};

/// Checks which composition rule P follows under the lexicographic
/// row/column convention. The (12) example fixes the matrices; this pins
/// P(sigma) P(tau) = P(tau * sigma) with a non-commuting pair.
inline void check_composition_convention() {
    static const bool ok = [] {
        const auto s = Permutation::transposition(3, 1, 2);
        const auto t = Permutation::transposition(3, 2, 3);
        const auto lhs = permutation_matrix(s, 2) * permutation_matrix(t, 2);
        return lhs == permutation_matrix(t * s, 2) && !(lhs == permutation_matrix(s * t, 2));
    }();
    if (!ok) throw InvariantViolation("permutation matrices do not satisfy P(s)P(t) = P(t*s)");
}

/// The complete family {pi(lambda)} for one (n, k), in canonical partition order.
class ProjectorSet {
public:
    ProjectorSet(int n, int k, std::vector<IsotypicProjector> projectors)
        : n_(n), k_(k), shape_(n, k), table_(character_table(n, kHardMaxN)), projectors_(std::move(projectors)) {
        if (projectors_.size() != table_->size())
            throw ArgumentError("projector set needs one projector per partition of " + std::to_string(n));
        for (std::size_t i = 0; i < projectors_.size(); ++i)
            if (projectors_[i].partition() != table_->partitions()[i] || projectors_[i].k() != k)
                throw ArgumentError("projector set is not in canonical partition order");
    }

    static ProjectorSet build(int n, int k, const BuildOptions& opts = {}) {
        check_budget(n, k, opts.budget_bytes, opts.threads);
        check_n(n, opts.n_max);
        check_composition_convention();
        const TensorShape shape(n, k);
        auto table = character_table(n, kHardMaxN);
        const std::size_t p = table->size();
        std::vector<std::vector<std::int64_t>> coef(p, std::vector<std::int64_t>(p));
        for (std::size_t l = 0; l < p; ++l)
            for (std::size_t c = 0; c < p; ++c) coef[l][c] = table->dimension(l) * table->at(l, c);
        auto mats = detail::class_combinations(shape, table->partitions(), coef, opts.threads);
        std::vector<IsotypicProjector> out;
        out.reserve(p);
        for (std::size_t l = 0; l < p; ++l) out.emplace_back(table->partitions()[l], k, std::move(mats[l]));
        return ProjectorSet(n, k, std::move(out));
    }

    int n() const noexcept { return n_; }
    int k() const noexcept { return k_; }
    const TensorShape& shape() const noexcept { return shape_; }
    const CharacterTable& table() const noexcept { return *table_; }
    const std::vector<Partition>& partitions() const noexcept { return table_->partitions(); }
    const std::vector<IsotypicProjector>& projectors() const noexcept { return projectors_; }

    const IsotypicProjector& operator[](const Partition& lambda) const {
        return projectors_[table_->index_of(lambda)];
    }

    std::size_t bytes() const {
        std::size_t b = 0;
        for (const auto& p : projectors_) b += p.numerator().bytes();
        return b;
    }

private:
    int n_;
    int k_;
    TensorShape shape_;
    std::shared_ptr<const CharacterTable> table_;
    std::vector<IsotypicProjector> projectors_;
};

/// Single projector; builds only the combination for lambda.
inline IsotypicProjector projector(const Partition& lambda, int k, const BuildOptions& opts = {}) {
    const int n = lambda.n();
    check_budget(n, k, opts.budget_bytes, opts.threads);
    check_n(n, opts.n_max);
    check_composition_convention();
    auto table = character_table(n, kHardMaxN);
    const std::size_t l = table->index_of(lambda);
    std::vector<std::int64_t> coef(table->size());
    for (std::size_t c = 0; c < table->size(); ++c) coef[c] = table->dimension(l) * table->at(l, c);
    auto mats = detail::class_combinations(TensorShape(n, k), table->partitions(), {coef}, opts.threads);
    return IsotypicProjector(lambda, k, std::move(mats.front()));
}

// ---------------------------------------------------------------------------
// Verification

struct ProjectorCheck {
    std::string name;
    std::string subject;  // partition(s) involved, empty for global checks
    bool passed = false;
    std::string detail;
};

struct ProjectorReport {
    int n = 0;
    int k = 0;
    std::vector<ProjectorCheck> checks;

    struct Component {
        Partition lambda;
        std::int64_t dim_m = 0;
        std::int64_t dim_s = 0;
        std::int64_t trace_over_order = 0;
        bool vanishing = false;
    };
    std::vector<Component> components;

    bool all_passed() const {
        return std::all_of(checks.begin(), checks.end(), [](const ProjectorCheck& c) { return c.passed; });
    }

    const ProjectorCheck* first_failure() const {
        for (const auto& c : checks)
            if (!c.passed) return &c;
        return nullptr;
    }
};

/// Raised by verify_projectors; carries the full report.
class ProjectorVerificationError : public InvariantViolation {
public:
    explicit ProjectorVerificationError(ProjectorReport report)
        : InvariantViolation(describe(report)), report_(std::move(report)) {}
    const ProjectorReport& report() const noexcept { return report_; }

private:
    static std::string describe(const ProjectorReport& r) {
        const auto* f = r.first_failure();
        std::string s = "projector verification failed for n=" + std::to_string(r.n) + ", k=" + std::to_string(r.k);
        if (f) s += ": " + f->name + (f->subject.empty() ? "" : " " + f->subject) + " (" + f->detail + ")";
        return s;
    }
    ProjectorReport report_;
};

/// Exact integer checks on a projector family:
///   sum_lambda Num(lambda) = n! I,
///   Num(lambda) Num(mu) = n! Num(lambda) delta_{lambda mu},
///   trace Num(lambda) = n! dim M_lambda dim S^lambda(R^k),
/// plus symmetry of each numerator and vanishing of projectors for
/// partitions longer than k. Throws ProjectorVerificationError on failure.
inline ProjectorReport verify_projectors(const ProjectorSet& set) {
    ProjectorReport rep;
    rep.n = set.n();
    rep.k = set.k();
    const std::int64_t order = factorial(set.n());
    const auto& projs = set.projectors();
    const std::size_t dim = set.shape().size();

    SparseMatrix sum = SparseMatrix::zero(dim, dim);
    for (const auto& p : projs) sum = sum + p.numerator();
    rep.checks.push_back({"resolution-of-identity", "", sum == SparseMatrix::identity(dim, order),
                          "sum of numerators vs " + std::to_string(order) + " * I"});

    std::int64_t rank_total = 0;
    for (const auto& p : projs) {
        const auto& num = p.numerator();
        const std::string who = p.partition().to_string();
        ProjectorReport::Component comp{p.partition(), hook_length_dimension(p.partition()),
                                        schur_functor_dimension(p.partition(), set.k()), 0, p.vanishing()};
        const std::int64_t tr = num.trace();
        const bool divisible = tr % order == 0;
        comp.trace_over_order = tr / order;
        rank_total += comp.trace_over_order;
        rep.checks.push_back({"trace", who, divisible && comp.trace_over_order == comp.dim_m * comp.dim_s,
                              "trace/n! = " + std::to_string(tr) + "/" + std::to_string(order) + ", expected " +
                                  std::to_string(comp.dim_m * comp.dim_s)});
        rep.checks.push_back({"symmetric", who, num.transpose() == num, "Num = Num^T"});
        if (p.vanishing())
            rep.checks.push_back({"vanishing", who, num.is_zero(),
                                  "length " + std::to_string(p.partition().length()) + " > k"});
        rep.components.push_back(std::move(comp));
    }
    rep.checks.push_back({"dimension-sum", "", rank_total == static_cast<std::int64_t>(dim),
                          "sum of ranks " + std::to_string(rank_total) + " vs k^n = " + std::to_string(dim)});

    for (std::size_t a = 0; a < projs.size(); ++a) {
        for (std::size_t b = a; b < projs.size(); ++b) {
            const auto& na = projs[a].numerator();
            const auto& nb = projs[b].numerator();
            const std::string who = projs[a].partition().to_string() +
                                    (a == b ? "" : " x " + projs[b].partition().to_string());
            if (a == b) {
                rep.checks.push_back({"idempotent", who, na * na == na.scaled(order), "Num^2 = n! Num"});
            } else {
                const bool zero = (na.is_zero() || nb.is_zero()) ? true : (na * nb).is_zero();
                rep.checks.push_back({"orthogonal", who, zero, "Num(l) Num(m) = 0"});
            }
        }
    }

    if (!rep.all_passed()) throw ProjectorVerificationError(rep);
    return rep;
}

}  // namespace schur
