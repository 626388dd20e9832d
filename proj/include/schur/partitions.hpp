#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "error.hpp"

namespace schur {

/// Default upper bound on the number of tensor factors.
inline constexpr int kDefaultMaxN = 8;
/// Largest n for which n! fits in a signed 64-bit integer.
inline constexpr int kHardMaxN = 20;

namespace detail {

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t out = 0;
    if (__builtin_mul_overflow(a, b, &out))
        throw RangeError("integer overflow in combinatorial quantity");
    return out;
}

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t out = 0;
    if (__builtin_add_overflow(a, b, &out))
        throw RangeError("integer overflow in combinatorial quantity");
    return out;
}

}  // namespace detail

inline std::int64_t factorial(int n) {
    if (n < 0 || n > kHardMaxN)
        throw RangeError("factorial: n = " + std::to_string(n) + " outside [0, 20]");
    std::int64_t f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

/// Integer partition of n, parts stored in non-increasing order.
///
/// The same value labels a Young diagram, an irreducible representation of
/// S_n and, read as a multiset of cycle lengths (fixed points included as
/// parts equal to 1), a conjugacy class of S_n.
class Partition {
public:
    Partition() = default;

    explicit Partition(std::vector<int> parts) : parts_(std::move(parts)) {
        if (parts_.empty())
            throw ArgumentError("partition must have at least one part");
        for (std::size_t i = 0; i < parts_.size(); ++i) {
            if (parts_[i] < 1)
                throw ArgumentError("partition parts must be positive: " + to_string());
            if (i > 0 && parts_[i] > parts_[i - 1])
                throw ArgumentError("partition parts must be non-increasing: " + to_string());
        }
        n_ = std::accumulate(parts_.begin(), parts_.end(), 0);
    }

    Partition(std::initializer_list<int> parts) : Partition(std::vector<int>(parts)) {}

    /// Sorts arbitrary positive parts into canonical order.
    static Partition from_unsorted(std::vector<int> parts) {
        std::sort(parts.begin(), parts.end(), std::greater<>());
        return Partition(std::move(parts));
    }

    int n() const noexcept { return n_; }
    int length() const noexcept { return static_cast<int>(parts_.size()); }
    std::span<const int> parts() const noexcept { return parts_; }
    int operator[](std::size_t i) const { return parts_[i]; }

    /// Transposed Young diagram.
    Partition conjugate() const {
        std::vector<int> out(static_cast<std::size_t>(parts_.front()), 0);
        for (int p : parts_)
            for (int j = 0; j < p; ++j) ++out[static_cast<std::size_t>(j)];
        return Partition(std::move(out));
    }

    bool is_identity_type() const noexcept { return parts_.front() == 1; }

    /// "(4,3,1)"
    std::string to_string() const {
        std::string s = "(";
        for (std::size_t i = 0; i < parts_.size(); ++i) {
            if (i) s += ',';
            s += std::to_string(parts_[i]);
        }
        return s + ")";
    }

    friend bool operator==(const Partition&, const Partition&) = default;
    /// Lexicographic on the part sequence.
    friend std::strong_ordering operator<=>(const Partition& a, const Partition& b) {
        return a.parts_ <=> b.parts_;
    }

private:
    std::vector<int> parts_;
    int n_ = 0;
};

/// Cycle lengths of a permutation; shares the partition representation.
using CycleType = Partition;

inline void check_n(int n, int n_max) {
    if (n_max > kHardMaxN) n_max = kHardMaxN;
    if (n < 1 || n > n_max)
        throw RangeError("n = " + std::to_string(n) + " outside supported range [1, " +
                         std::to_string(n_max) + "]");
}

/// Every partition of n in decreasing lexicographic order: (n) first,
/// (1,...,1) last. This is the canonical index order used throughout.
inline std::vector<Partition> enumerate_partitions(int n, int n_max = kDefaultMaxN) {
    check_n(n, n_max);
    std::vector<Partition> out;
    std::vector<int> cur{n};
    while (true) {
        out.emplace_back(cur);
        // Next partition in decreasing lex order: find the rightmost part > 1,
        // decrement it and refill greedily with the released amount.
        int rem = 0;
        while (!cur.empty() && cur.back() == 1) {
            ++rem;
            cur.pop_back();
        }
        if (cur.empty()) break;
        int p = --cur.back();
        ++rem;
        while (rem > 0) {
            int take = std::min(p, rem);
            cur.push_back(take);
            rem -= take;
        }
    }
    return out;
}

/// z_c = prod_l l^{m_l} m_l!, the order of the centralizer of a permutation
/// with cycle type c.
inline std::int64_t centralizer_order(const CycleType& c) {
    std::int64_t z = 1;
    auto parts = c.parts();
    for (std::size_t i = 0; i < parts.size();) {
        std::size_t j = i;
        while (j < parts.size() && parts[j] == parts[i]) ++j;
        auto mult = static_cast<int>(j - i);
        for (int r = 0; r < mult; ++r) z = detail::checked_mul(z, parts[i]);
        z = detail::checked_mul(z, factorial(mult));
        i = j;
    }
    return z;
}

/// Number of permutations in S_n with cycle type c.
inline std::int64_t class_size(const CycleType& c) { return factorial(c.n()) / centralizer_order(c); }

/// Hook length of cell (row, col), zero-based.
inline int hook_length(const Partition& lambda, const Partition& conj, int row, int col) {
    return lambda[static_cast<std::size_t>(row)] - col + conj[static_cast<std::size_t>(col)] - row - 1;
}

/// dim M_lambda = n! / prod(hooks).
inline std::int64_t hook_length_dimension(const Partition& lambda) {
    const Partition conj = lambda.conjugate();
    std::int64_t hooks = 1;
    for (int i = 0; i < lambda.length(); ++i)
        for (int j = 0; j < lambda[static_cast<std::size_t>(i)]; ++j)
            hooks = detail::checked_mul(hooks, hook_length(lambda, conj, i, j));
    return factorial(lambda.n()) / hooks;
}

/// dim S^lambda(R^k) by the hook-content formula prod (k + col - row) / hook.
/// Zero exactly when lambda has more than k rows.
inline std::int64_t schur_functor_dimension(const Partition& lambda, int k) {
    if (k < 1) throw RangeError("k must be positive");
    if (lambda.length() > k) return 0;
    const Partition conj = lambda.conjugate();
    // Running fraction kept reduced; the final value is an integer.
    std::int64_t num = 1;
    std::int64_t den = 1;
    for (int i = 0; i < lambda.length(); ++i) {
        for (int j = 0; j < lambda[static_cast<std::size_t>(i)]; ++j) {
            std::int64_t a = k + j - i;
            std::int64_t b = hook_length(lambda, conj, i, j);
            std::int64_t g1 = std::gcd(a, den);
            std::int64_t g2 = std::gcd(b, num);
            num = detail::checked_mul(num / g2, a / g1);
            den = detail::checked_mul(den / g1, b / g2);
            std::int64_t g = std::gcd(num, den);
            num /= g;
            den /= g;
        }
    }
    if (den != 1) throw InvariantViolation("hook-content formula produced a non-integer");
    return num;
}

/// Cycle type of a permutation given as images perm[i] = sigma(i), zero-based.
inline CycleType cycle_type(std::span<const int> perm) {
    std::vector<char> seen(perm.size(), 0);
    std::vector<int> lengths;
    for (std::size_t start = 0; start < perm.size(); ++start) {
        if (seen[start]) continue;
        int len = 0;
        for (auto i = start; !seen[i]; i = static_cast<std::size_t>(perm[i])) {
            seen[i] = 1;
            ++len;
        }
        lengths.push_back(len);
    }
    return Partition::from_unsorted(std::move(lengths));
}

/// Canonical representative in cycle notation, one-based:
/// (3,2,1) -> "(123)(45)", identity -> "()". Entries are comma-separated
/// once n exceeds 9.
inline std::string cycle_notation(const CycleType& c) {
    const bool commas = c.n() > 9;
    std::string s;
    int next = 1;
    for (int len : c.parts()) {
        if (len == 1) break;
        s += '(';
        for (int r = 0; r < len; ++r) {
            if (commas && r) s += ',';
            s += std::to_string(next++);
        }
        s += ')';
    }
    return s.empty() ? "()" : s;
}

}  // namespace schur
