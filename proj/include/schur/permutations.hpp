#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <span>
#include <vector>

#include "partitions.hpp"

namespace schur {

/// Zero-based permutation stored by images: sigma(i) = images[i].
class Permutation {
public:
    Permutation() = default;

    explicit Permutation(std::vector<int> images) : images_(std::move(images)) {
        std::vector<char> seen(images_.size(), 0);
        for (int x : images_) {
            if (x < 0 || static_cast<std::size_t>(x) >= images_.size() || seen[static_cast<std::size_t>(x)])
                throw ArgumentError("not a permutation");
            seen[static_cast<std::size_t>(x)] = 1;
        }
    }

    static Permutation identity(int n) {
        std::vector<int> v(static_cast<std::size_t>(n));
        std::iota(v.begin(), v.end(), 0);
        return Permutation(std::move(v));
    }

    /// One-based transposition (a b).
    static Permutation transposition(int n, int a, int b) {
        auto p = identity(n);
        std::swap(p.images_[static_cast<std::size_t>(a - 1)], p.images_[static_cast<std::size_t>(b - 1)]);
        return p;
    }

    int n() const noexcept { return static_cast<int>(images_.size()); }
    int operator()(int i) const { return images_[static_cast<std::size_t>(i)]; }
    std::span<const int> images() const noexcept { return images_; }

    Permutation inverse() const {
        std::vector<int> inv(images_.size());
        for (std::size_t i = 0; i < images_.size(); ++i) inv[static_cast<std::size_t>(images_[i])] = static_cast<int>(i);
        return Permutation(std::move(inv));
    }

    CycleType cycle_type() const { return schur::cycle_type(images_); }

    friend bool operator==(const Permutation&, const Permutation&) = default;

private:
    std::vector<int> images_;
};

/// (a * b)(i) = a(b(i)).
inline Permutation operator*(const Permutation& a, const Permutation& b) {
    if (a.n() != b.n()) throw ArgumentError("composing permutations of different degree");
    std::vector<int> out(static_cast<std::size_t>(a.n()));
    for (int i = 0; i < a.n(); ++i) out[static_cast<std::size_t>(i)] = a(b(i));
    return Permutation(std::move(out));
}

/// All n! permutations in lexicographic order of their image sequences.
inline std::vector<Permutation> all_permutations(int n) {
    std::vector<int> v(static_cast<std::size_t>(n));
    std::iota(v.begin(), v.end(), 0);
    std::vector<Permutation> out;
    do {
        out.emplace_back(v);
    } while (std::next_permutation(v.begin(), v.end()));
    return out;
}

/// Visits every permutation of cycle type c exactly once without touching
/// the rest of S_n. The smallest unplaced point always opens the next cycle;
/// its length ranges over the distinct remaining lengths and the other
/// members are an ordered choice from the unplaced points.
inline void for_each_permutation_of_type(const CycleType& c, const std::function<void(const Permutation&)>& visit) {
    const int n = c.n();
    std::map<int, int> remaining;
    for (int len : c.parts()) ++remaining[len];
    std::vector<int> images(static_cast<std::size_t>(n), -1);
    std::vector<char> used(static_cast<std::size_t>(n), 0);
    std::vector<int> cycle;

    std::function<void()> open_cycle;
    std::function<void(int, int)> extend;

    open_cycle = [&]() {
        int start = 0;
        while (start < n && used[static_cast<std::size_t>(start)]) ++start;
        if (start == n) {
            visit(Permutation(images));
            return;
        }
        for (auto& [len, count] : remaining) {
            if (count == 0) continue;
            --count;
            used[static_cast<std::size_t>(start)] = 1;
            cycle.assign(1, start);
            extend(len, start);
            used[static_cast<std::size_t>(start)] = 0;
            ++count;
        }
    };

    extend = [&](int len, int start) {
        if (static_cast<int>(cycle.size()) == len) {
            for (std::size_t i = 0; i + 1 < cycle.size(); ++i)
                images[static_cast<std::size_t>(cycle[i])] = cycle[i + 1];
            images[static_cast<std::size_t>(cycle.back())] = start;
            auto saved = cycle;
            open_cycle();
            cycle = std::move(saved);
            return;
        }
        for (int x = start + 1; x < n; ++x) {
            if (used[static_cast<std::size_t>(x)]) continue;
            used[static_cast<std::size_t>(x)] = 1;
            cycle.push_back(x);
            extend(len, start);
            cycle.pop_back();
            used[static_cast<std::size_t>(x)] = 0;
        }
    };

    open_cycle();
}

inline std::vector<Permutation> permutations_of_type(const CycleType& c) {
    std::vector<Permutation> out;
    out.reserve(static_cast<std::size_t>(class_size(c)));
    for_each_permutation_of_type(c, [&](const Permutation& p) { out.push_back(p); });
    return out;
}

}  // namespace schur
