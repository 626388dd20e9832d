#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "partitions.hpp"

namespace schur {

namespace detail {

// Murnaghan-Nakayama on beta-sets. Removing a rim hook of length r moves a
// bead from position b to b - r; the sign is (-1)^(beads jumped over).
class MurnaghanNakayama {
public:
    std::int64_t value(const std::vector<int>& lambda, const std::vector<int>& mu) {
        std::lock_guard lock(mutex_);
        return eval(lambda, mu, 0);
    }

private:
    std::int64_t eval(const std::vector<int>& lambda, const std::vector<int>& mu, std::size_t pos) {
        if (pos == mu.size()) return lambda.empty() ? 1 : 0;
        std::vector<int> rest(mu.begin() + static_cast<std::ptrdiff_t>(pos), mu.end());
        auto key = std::make_pair(lambda, rest);
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;

        const int r = mu[pos];
        const auto len = static_cast<int>(lambda.size());
        std::vector<int> beta(lambda.size());
        for (int i = 0; i < len; ++i) beta[static_cast<std::size_t>(i)] = lambda[static_cast<std::size_t>(i)] + len - 1 - i;

        auto occupied = [&](int x) {
            for (int b : beta)
                if (b == x) return true;
            return false;
        };

        std::int64_t total = 0;
        for (std::size_t i = 0; i < beta.size(); ++i) {
            const int from = beta[i];
            const int to = from - r;
            if (to < 0 || occupied(to)) continue;
            int jumped = 0;
            for (int b : beta)
                if (b > to && b < from) ++jumped;
            std::vector<int> moved = beta;
            moved[i] = to;
            std::sort(moved.begin(), moved.end(), std::greater<>());
            std::vector<int> smaller;
            for (int j = 0; j < len; ++j) {
                int part = moved[static_cast<std::size_t>(j)] - (len - 1 - j);
                if (part > 0) smaller.push_back(part);
            }
            std::int64_t sub = eval(smaller, mu, pos + 1);
            total += (jumped % 2 == 0) ? sub : -sub;
        }
        memo_.emplace(std::move(key), total);
        return total;
    }

    std::mutex mutex_;
    std::map<std::pair<std::vector<int>, std::vector<int>>, std::int64_t> memo_;
};

inline MurnaghanNakayama& mn_engine() {
    static MurnaghanNakayama engine;
    return engine;
}

}  // namespace detail

/// chi_lambda evaluated on the conjugacy class of cycle type c.
inline std::int64_t character_value(const Partition& lambda, const CycleType& c) {
    if (lambda.n() != c.n())
        throw ArgumentError("character_value: " + lambda.to_string() + " and " + c.to_string() +
                            " are partitions of different integers");
    std::vector<int> l(lambda.parts().begin(), lambda.parts().end());
    std::vector<int> m(c.parts().begin(), c.parts().end());
    return detail::mn_engine().value(l, m);
}

/// Exact integer character table of S_n. Rows are irreducible characters,
/// columns conjugacy classes, both in canonical partition order; the
/// identity class is therefore the last column.
class CharacterTable {
public:
    explicit CharacterTable(int n, int n_max = kDefaultMaxN)
        : n_(n), partitions_(enumerate_partitions(n, n_max)) {
        const std::size_t p = partitions_.size();
        values_.resize(p * p);
        sizes_.resize(p);
        for (std::size_t c = 0; c < p; ++c) sizes_[c] = class_size(partitions_[c]);
        for (std::size_t r = 0; r < p; ++r)
            for (std::size_t c = 0; c < p; ++c)
                values_[r * p + c] = character_value(partitions_[r], partitions_[c]);
        verify();
    }

    int n() const noexcept { return n_; }
    std::size_t size() const noexcept { return partitions_.size(); }
    const std::vector<Partition>& partitions() const noexcept { return partitions_; }
    const std::vector<std::int64_t>& class_sizes() const noexcept { return sizes_; }
    std::size_t identity_column() const noexcept { return partitions_.size() - 1; }

    std::int64_t at(std::size_t row, std::size_t col) const { return values_[row * size() + col]; }

    std::size_t index_of(const Partition& lambda) const {
        for (std::size_t i = 0; i < partitions_.size(); ++i)
            if (partitions_[i] == lambda) return i;
        throw ArgumentError(lambda.to_string() + " is not a partition of " + std::to_string(n_));
    }

    std::int64_t dimension(std::size_t row) const { return at(row, identity_column()); }

private:
    void verify() const {
        const std::size_t p = size();
        const std::int64_t order = factorial(n_);
        for (std::size_t r = 0; r < p; ++r) {
            if (dimension(r) != hook_length_dimension(partitions_[r]))
                throw InvariantViolation("character degree of " + partitions_[r].to_string() +
                                         " disagrees with the hook-length formula");
            for (std::size_t s = r; s < p; ++s) {
                std::int64_t sum = 0;
                for (std::size_t c = 0; c < p; ++c)
                    sum = detail::checked_add(sum, detail::checked_mul(sizes_[c], at(r, c) * at(s, c)));
                if (sum != (r == s ? order : 0))
                    throw InvariantViolation("row orthogonality fails for " + partitions_[r].to_string() +
                                             ", " + partitions_[s].to_string());
            }
        }
        for (std::size_t c = 0; c < p; ++c) {
            for (std::size_t d = c; d < p; ++d) {
                std::int64_t sum = 0;
                for (std::size_t r = 0; r < p; ++r) sum += at(r, c) * at(r, d);
                if (sum != (c == d ? order / sizes_[c] : 0))
                    throw InvariantViolation("column orthogonality fails for " + partitions_[c].to_string() +
                                             ", " + partitions_[d].to_string());
            }
        }
    }

    int n_;
    std::vector<Partition> partitions_;
    std::vector<std::int64_t> values_;
    std::vector<std::int64_t> sizes_;
};

/// Shared, lazily built table for S_n. Safe under concurrent first access.
inline std::shared_ptr<const CharacterTable> character_table(int n, int n_max = kDefaultMaxN) {
    check_n(n, n_max);
    static std::mutex mutex;
    static std::map<int, std::shared_ptr<const CharacterTable>> cache;
    std::lock_guard lock(mutex);
    auto& slot = cache[n];
    if (!slot) slot = std::make_shared<const CharacterTable>(n, kHardMaxN);
    return slot;
}

}  // namespace schur
