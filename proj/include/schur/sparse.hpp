#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"

namespace schur {

/// Compressed-row integer matrix. Column indices within a row are strictly
/// increasing and stored values are non-zero.
class SparseMatrix {
public:
    using Index = std::uint32_t;
    using Value = std::int64_t;

    struct Entry {
        Index col;
        Value value;
    };

    SparseMatrix() : row_ptr_(1, 0) {}
    SparseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), row_ptr_(1, 0) {
        row_ptr_.reserve(rows + 1);
    }

    static SparseMatrix zero(std::size_t rows, std::size_t cols) {
        SparseMatrix m(rows, cols);
        m.row_ptr_.assign(rows + 1, 0);
        return m;
    }

    static SparseMatrix identity(std::size_t size, Value scale = 1) {
        SparseMatrix m(size, size);
        m.cols_idx_.reserve(size);
        m.values_.reserve(size);
        for (std::size_t i = 0; i < size; ++i) {
            Entry e{static_cast<Index>(i), scale};
            m.append_row(std::span<const Entry>(&e, scale != 0 ? 1 : 0));
        }
        return m;
    }

    /// Appends the next row. Entries must be sorted by column; zeros are dropped.
    void append_row(std::span<const Entry> entries) {
        if (row_ptr_.size() > rows_) throw ArgumentError("append_row: matrix already complete");
        Index prev = 0;
        bool first = true;
        for (const Entry& e : entries) {
            if (e.col >= cols_ || (!first && e.col <= prev))
                throw ArgumentError("append_row: columns out of range or not increasing");
            prev = e.col;
            first = false;
            if (e.value == 0) continue;
            cols_idx_.push_back(e.col);
            values_.push_back(e.value);
        }
        row_ptr_.push_back(cols_idx_.size());
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    std::size_t nnz() const noexcept { return values_.size(); }
    bool complete() const noexcept { return row_ptr_.size() == rows_ + 1; }

    std::span<const Index> row_cols(std::size_t r) const {
        return {cols_idx_.data() + row_ptr_[r], row_ptr_[r + 1] - row_ptr_[r]};
    }
    std::span<const Value> row_values(std::size_t r) const {
        return {values_.data() + row_ptr_[r], row_ptr_[r + 1] - row_ptr_[r]};
    }

    Value at(std::size_t r, std::size_t c) const {
        auto cols = row_cols(r);
        auto it = std::lower_bound(cols.begin(), cols.end(), static_cast<Index>(c));
        if (it == cols.end() || *it != c) return 0;
        return row_values(r)[static_cast<std::size_t>(it - cols.begin())];
    }

    Value row_sum(std::size_t r) const {
        Value s = 0;
        for (Value v : row_values(r)) s += v;
        return s;
    }

    Value trace() const {
        Value t = 0;
        for (std::size_t r = 0; r < std::min(rows_, cols_); ++r) t += at(r, r);
        return t;
    }

    bool is_zero() const noexcept { return values_.empty(); }

    /// y = A x in double precision, accumulated in row order.
    std::vector<double> apply(std::span<const double> x) const {
        if (x.size() != cols_) throw ArgumentError("apply: vector length does not match column count");
        std::vector<double> y(rows_, 0.0);
        for (std::size_t r = 0; r < rows_; ++r) {
            double acc = 0.0;
            for (std::size_t p = row_ptr_[r]; p < row_ptr_[r + 1]; ++p)
                acc += static_cast<double>(values_[p]) * x[cols_idx_[p]];
            y[r] = acc;
        }
        return y;
    }

    SparseMatrix transpose() const {
        std::vector<std::vector<Entry>> buckets(cols_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t p = row_ptr_[r]; p < row_ptr_[r + 1]; ++p)
                buckets[cols_idx_[p]].push_back({static_cast<Index>(r), values_[p]});
        SparseMatrix t(cols_, rows_);
        for (const auto& b : buckets) t.append_row(b);
        return t;
    }

    /// Rough storage footprint.
    std::size_t bytes() const noexcept {
        return row_ptr_.size() * sizeof(std::uint64_t) + cols_idx_.size() * sizeof(Index) +
               values_.size() * sizeof(Value);
    }

    friend bool operator==(const SparseMatrix& a, const SparseMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.row_ptr_ == b.row_ptr_ && a.cols_idx_ == b.cols_idx_ &&
               a.values_ == b.values_;
    }

    friend SparseMatrix operator*(const SparseMatrix& a, const SparseMatrix& b) { return multiply(a, b); }
    friend SparseMatrix operator+(const SparseMatrix& a, const SparseMatrix& b) { return combine(a, 1, b, 1); }
    friend SparseMatrix operator-(const SparseMatrix& a, const SparseMatrix& b) { return combine(a, 1, b, -1); }

    SparseMatrix scaled(Value s) const {
        SparseMatrix out = *this;
        if (s == 0) return zero(rows_, cols_);
        for (auto& v : out.values_) v = checked(static_cast<__int128>(v) * s);
        return out;
    }

    /// a*x + b*y with overflow checking.
    static SparseMatrix combine(const SparseMatrix& x, Value a, const SparseMatrix& y, Value b) {
        if (x.rows_ != y.rows_ || x.cols_ != y.cols_) throw ArgumentError("combine: shape mismatch");
        SparseMatrix out(x.rows_, x.cols_);
        std::vector<Entry> row;
        for (std::size_t r = 0; r < x.rows_; ++r) {
            row.clear();
            auto xc = x.row_cols(r), yc = y.row_cols(r);
            auto xv = x.row_values(r), yv = y.row_values(r);
            std::size_t i = 0, j = 0;
            while (i < xc.size() || j < yc.size()) {
                if (j == yc.size() || (i < xc.size() && xc[i] < yc[j])) {
                    row.push_back({xc[i], checked(static_cast<__int128>(a) * xv[i])});
                    ++i;
                } else if (i == xc.size() || yc[j] < xc[i]) {
                    row.push_back({yc[j], checked(static_cast<__int128>(b) * yv[j])});
                    ++j;
                } else {
                    row.push_back({xc[i], checked(static_cast<__int128>(a) * xv[i] + static_cast<__int128>(b) * yv[j])});
                    ++i;
                    ++j;
                }
            }
            out.append_row(row);
        }
        return out;
    }

    /// Exact product; accumulates in 128 bits and rejects results that do
    /// not fit the 64-bit value type.
    static SparseMatrix multiply(const SparseMatrix& a, const SparseMatrix& b) {
        if (a.cols_ != b.rows_) throw ArgumentError("multiply: inner dimensions differ");
        SparseMatrix out(a.rows_, b.cols_);
        std::vector<__int128> acc(b.cols_, 0);
        std::vector<char> touched(b.cols_, 0);
        std::vector<Index> cols;
        std::vector<Entry> row;
        for (std::size_t r = 0; r < a.rows_; ++r) {
            cols.clear();
            for (std::size_t p = a.row_ptr_[r]; p < a.row_ptr_[r + 1]; ++p) {
                const __int128 av = a.values_[p];
                const std::size_t k = a.cols_idx_[p];
                for (std::size_t q = b.row_ptr_[k]; q < b.row_ptr_[k + 1]; ++q) {
                    const Index c = b.cols_idx_[q];
                    if (!touched[c]) {
                        touched[c] = 1;
                        cols.push_back(c);
                    }
                    acc[c] += av * b.values_[q];
                }
            }
            std::sort(cols.begin(), cols.end());
            row.clear();
            for (Index c : cols) {
                row.push_back({c, checked(acc[c])});
                acc[c] = 0;
                touched[c] = 0;
            }
            out.append_row(row);
        }
        return out;
    }

private:
    static Value checked(__int128 v) {
        if (v > static_cast<__int128>(INT64_MAX) || v < static_cast<__int128>(INT64_MIN))
            throw RangeError("sparse integer matrix entry overflows 64 bits");
        return static_cast<Value>(v);
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<std::uint64_t> row_ptr_;
    std::vector<Index> cols_idx_;
    std::vector<Value> values_;
};

}  // namespace schur
