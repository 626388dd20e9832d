#pragma once

// Test-only oracles. Everything here is written independently of the
// library's algorithms: brute-force tableau counts, dense matrices built
// from tuple manipulation, and the projection formula summed over all of
// S_n with chi(sigma^{-1}).

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numeric>
#include <random>
#include <vector>

#include <schur/schur.hpp>

namespace oracle {

using Dense = std::vector<std::vector<double>>;

/// Standard Young tableaux of the given shape, by filling cells 1..n in
/// every order that keeps rows and columns increasing.
inline std::int64_t count_standard_tableaux(const std::vector<int>& shape) {
    std::vector<int> filled(shape.size(), 0);
    int total = std::accumulate(shape.begin(), shape.end(), 0);
    std::function<std::int64_t(int)> rec = [&](int placed) -> std::int64_t {
        if (placed == total) return 1;
        std::int64_t count = 0;
        for (std::size_t r = 0; r < shape.size(); ++r) {
            // next number can go at the end of row r if the row has room and
            // the cell above is already filled
            if (filled[r] < shape[r] && (r == 0 || filled[r - 1] > filled[r])) {
                ++filled[r];
                count += rec(placed + 1);
                --filled[r];
            }
        }
        return count;
    };
    return rec(0);
}

/// Semistandard tableaux with entries in 1..k: enumerate every filling.
inline std::int64_t count_semistandard_tableaux(const std::vector<int>& shape, int k) {
    std::vector<std::pair<int, int>> cells;
    for (std::size_t r = 0; r < shape.size(); ++r)
        for (int c = 0; c < shape[r]; ++c) cells.push_back({static_cast<int>(r), c});
    std::vector<std::vector<int>> grid(shape.size());
    for (std::size_t r = 0; r < shape.size(); ++r) grid[r].assign(static_cast<std::size_t>(shape[r]), 0);
    std::function<std::int64_t(std::size_t)> rec = [&](std::size_t idx) -> std::int64_t {
        if (idx == cells.size()) return 1;
        auto [r, c] = cells[idx];
        std::int64_t count = 0;
        for (int v = 1; v <= k; ++v) {
            if (c > 0 && grid[static_cast<std::size_t>(r)][static_cast<std::size_t>(c) - 1] > v) continue;
            if (r > 0 && grid[static_cast<std::size_t>(r) - 1][static_cast<std::size_t>(c)] >= v) continue;
            grid[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] = v;
            count += rec(idx + 1);
        }
        return count;
    };
    return rec(0);
}

/// All permutations of 0..n-1 as image vectors.
inline std::vector<std::vector<int>> all_perms(int n) {
    std::vector<int> v(static_cast<std::size_t>(n));
    std::iota(v.begin(), v.end(), 0);
    std::vector<std::vector<int>> out;
    do out.push_back(v);
    while (std::next_permutation(v.begin(), v.end()));
    return out;
}

inline std::vector<int> cycle_lengths(const std::vector<int>& p) {
    std::vector<int> out;
    std::vector<bool> seen(p.size());
    for (std::size_t s = 0; s < p.size(); ++s) {
        if (seen[s]) continue;
        int len = 0;
        for (std::size_t i = s; !seen[i]; i = static_cast<std::size_t>(p[i])) {
            seen[i] = true;
            ++len;
        }
        out.push_back(len);
    }
    std::sort(out.rbegin(), out.rend());
    return out;
}

/// Index tuple <-> linear index, written out with explicit powers.
inline std::vector<int> tuple_of(std::size_t idx, int n, int k) {
    std::vector<int> t(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        std::size_t place = 1;
        for (int j = i + 1; j < n; ++j) place *= static_cast<std::size_t>(k);
        t[static_cast<std::size_t>(i)] = static_cast<int>((idx / place) % static_cast<std::size_t>(k));
    }
    return t;
}

inline std::size_t index_of(const std::vector<int>& t, int k) {
    std::size_t idx = 0;
    for (int a : t) idx = idx * static_cast<std::size_t>(k) + static_cast<std::size_t>(a);
    return idx;
}

inline std::size_t ipow(int k, int n) {
    std::size_t d = 1;
    for (int i = 0; i < n; ++i) d *= static_cast<std::size_t>(k);
    return d;
}

/// Dense P(sigma): the input tuple's entry at position i moves to position sigma(i).
inline Dense dense_permutation(const std::vector<int>& sigma, int k) {
    const int n = static_cast<int>(sigma.size());
    const std::size_t d = ipow(k, n);
    Dense m(d, std::vector<double>(d, 0.0));
    for (std::size_t r = 0; r < d; ++r) {
        auto in = tuple_of(r, n, k);
        std::vector<int> out(in.size());
        for (std::size_t i = 0; i < in.size(); ++i) out[static_cast<std::size_t>(sigma[i])] = in[i];
        m[r][index_of(out, k)] = 1.0;
    }
    return m;
}

inline std::vector<double> matvec(const Dense& m, const std::vector<double>& x) {
    std::vector<double> y(m.size(), 0.0);
    for (std::size_t r = 0; r < m.size(); ++r)
        for (std::size_t c = 0; c < x.size(); ++c) y[r] += m[r][c] * x[c];
    return y;
}

inline Dense matmul(const Dense& a, const Dense& b) {
    Dense c(a.size(), std::vector<double>(b.front().size(), 0.0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t l = 0; l < b.size(); ++l)
            if (a[i][l] != 0.0)
                for (std::size_t j = 0; j < b[l].size(); ++j) c[i][j] += a[i][l] * b[l][j];
    return c;
}


/// The projection formula over every element of S_n, with chi(sigma^{-1})
/// looked up from a supplied character function.
inline std::vector<double> brute_force_projection(const std::function<std::int64_t(const std::vector<int>&)>& chi,
                                                  std::int64_t chi_identity, const std::vector<double>& t, int n,
                                                  int k) {
    std::vector<double> out(t.size(), 0.0);
    double order = 1.0;
    for (int i = 2; i <= n; ++i) order *= i;
    for (const auto& sigma : all_perms(n)) {
        std::vector<int> inv(sigma.size());
        for (std::size_t i = 0; i < sigma.size(); ++i) inv[static_cast<std::size_t>(sigma[i])] = static_cast<int>(i);
        const auto moved = matvec(dense_permutation(sigma, k), t);
        const double w = static_cast<double>(chi_identity * chi(inv)) / order;
        for (std::size_t i = 0; i < out.size(); ++i) out[i] += w * moved[i];
    }
    return out;
}

/// Kronecker power L^{⊗n} of a k x k matrix.
inline Dense kron_power(const Dense& l, int n) {
    Dense acc{{1.0}};
    for (int f = 0; f < n; ++f) {
        const std::size_t a = acc.size(), k = l.size();
        Dense next(a * k, std::vector<double>(a * k, 0.0));
        for (std::size_t i = 0; i < a; ++i)
            for (std::size_t j = 0; j < a; ++j)
                for (std::size_t p = 0; p < k; ++p)
                    for (std::size_t q = 0; q < k; ++q) next[i * k + p][j * k + q] = acc[i][j] * l[p][q];
        acc = std::move(next);
    }
    return acc;
}

inline Dense random_matrix(int k, std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    Dense m(static_cast<std::size_t>(k), std::vector<double>(static_cast<std::size_t>(k)));
    for (auto& row : m)
        for (auto& x : row) x = g(rng);
    return m;
}

/// Gram-Schmidt on a Gaussian matrix; rows form an orthonormal basis.
inline Dense random_rotation(int k, std::mt19937_64& rng) {
    Dense q = random_matrix(k, rng);
    for (std::size_t i = 0; i < q.size(); ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            double dot = 0.0;
            for (std::size_t c = 0; c < q.size(); ++c) dot += q[i][c] * q[j][c];
            for (std::size_t c = 0; c < q.size(); ++c) q[i][c] -= dot * q[j][c];
        }
        double nrm = 0.0;
        for (double x : q[i]) nrm += x * x;
        nrm = std::sqrt(nrm);
        for (double& x : q[i]) x /= nrm;
    }
    return q;
}

inline schur::DataSeries random_series(int samples, int variables, int dim, std::mt19937_64& rng, double scale = 1.0) {
    std::normal_distribution<double> g(0.0, scale);
    std::vector<double> v(static_cast<std::size_t>(samples) * variables * dim);
    for (double& x : v) x = g(rng);
    return schur::DataSeries(samples, variables, dim, std::move(v));
}

/// Applies the k x k matrix to every point of every variable.
inline schur::DataSeries transform_points(const schur::DataSeries& s, const Dense& m) {
    schur::DataSeries out = s;
    for (int j = 0; j < s.samples(); ++j)
        for (int i = 0; i < s.variables(); ++i)
            for (int a = 0; a < s.dim(); ++a) {
                double acc = 0.0;
                for (int b = 0; b < s.dim(); ++b)
                    acc += m[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] * s.at(j, i, b);
                out.at(j, i, a) = acc;
            }
    return out;
}

inline double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
    return d;
}

inline double norm(const std::vector<double>& a) {
    double s = 0.0;
    for (double x : a) s += x * x;
    return std::sqrt(s);
}

inline double relative_error(const std::vector<double>& got, const std::vector<double>& want) {
    std::vector<double> d(got.size());
    for (std::size_t i = 0; i < got.size(); ++i) d[i] = got[i] - want[i];
    return norm(d) / std::max(1.0, norm(want));
}

/// Unnormalized cross-covariance of two variables via explicit centered products.
inline Dense cross_covariance(const schur::DataSeries& s, int a, int b) {
    const int k = s.dim();
    std::vector<double> ma(static_cast<std::size_t>(k), 0.0), mb(static_cast<std::size_t>(k), 0.0);
    for (int j = 0; j < s.samples(); ++j)
        for (int c = 0; c < k; ++c) {
            ma[static_cast<std::size_t>(c)] += s.at(j, a, c) / s.samples();
            mb[static_cast<std::size_t>(c)] += s.at(j, b, c) / s.samples();
        }
    Dense m(static_cast<std::size_t>(k), std::vector<double>(static_cast<std::size_t>(k), 0.0));
    for (int j = 0; j < s.samples(); ++j)
        for (int p = 0; p < k; ++p)
            for (int q = 0; q < k; ++q)
                m[static_cast<std::size_t>(p)][static_cast<std::size_t>(q)] +=
                    (s.at(j, a, p) - ma[static_cast<std::size_t>(p)]) * (s.at(j, b, q) - mb[static_cast<std::size_t>(q)]);
    return m;
}

}  // namespace oracle
