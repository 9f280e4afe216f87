#pragma once

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "hh/coeff.hpp"

namespace hh {

template <class T>
struct Triplet {
    std::size_t row;
    std::size_t col;
    T value;
};

/// Immutable column-compressed sparse matrix. Each column is sorted by row
/// index and holds no explicit zeros. Entries may live in a noncommutative
/// ring (A^e); see compose() for the product convention.
template <class T>
class SparseMatrix {
public:
    using entry_type = std::pair<std::size_t, T>;
    using column_type = std::vector<entry_type>;

    SparseMatrix() = default;
    SparseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), columns_(cols) {}

    /// Duplicate (row, col) pairs are summed.
    static SparseMatrix from_triplets(std::size_t rows, std::size_t cols, std::vector<Triplet<T>> entries)
    {
        SparseMatrix m(rows, cols);
        for (auto& e : entries) {
            if (e.row >= rows || e.col >= cols) {
                throw std::out_of_range("SparseMatrix: entry (" + std::to_string(e.row) + ","
                                        + std::to_string(e.col) + ") outside "
                                        + std::to_string(rows) + "x" + std::to_string(cols));
            }
            m.columns_[e.col].emplace_back(e.row, std::move(e.value));
        }
        for (auto& col : m.columns_) {
            normalize(col);
        }
        return m;
    }

    static SparseMatrix from_columns(std::size_t rows, std::vector<column_type> columns)
    {
        SparseMatrix m(rows, columns.size());
        for (std::size_t c = 0; c < columns.size(); ++c) {
            for (const auto& [r, v] : columns[c]) {
                if (r >= rows) {
                    throw std::out_of_range("SparseMatrix: row index out of range");
                }
            }
            normalize(columns[c]);
            m.columns_[c] = std::move(columns[c]);
        }
        return m;
    }

    static SparseMatrix from_dense(const std::vector<std::vector<T>>& dense)
    {
        std::size_t rows = dense.size();
        std::size_t cols = rows == 0 ? 0 : dense.front().size();
        std::vector<Triplet<T>> t;
        for (std::size_t r = 0; r < rows; ++r) {
            if (dense[r].size() != cols) {
                throw std::invalid_argument("SparseMatrix::from_dense: ragged rows");
            }
            for (std::size_t c = 0; c < cols; ++c) {
                t.push_back({r, c, dense[r][c]});
            }
        }
        return from_triplets(rows, cols, std::move(t));
    }

    static SparseMatrix identity(std::size_t n)
    {
        SparseMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            m.columns_[i].emplace_back(i, T(1));
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    const column_type& column(std::size_t c) const { return columns_.at(c); }

    std::size_t nonzeros() const
    {
        std::size_t n = 0;
        for (const auto& c : columns_) {
            n += c.size();
        }
        return n;
    }

    bool is_zero() const { return nonzeros() == 0; }

    T at(std::size_t r, std::size_t c) const
    {
        const auto& col = columns_.at(c);
        auto it = std::lower_bound(col.begin(), col.end(), r,
                                   [](const entry_type& e, std::size_t row) { return e.first < row; });
        if (it != col.end() && it->first == r) {
            return it->second;
        }
        return T{};
    }

    std::vector<Triplet<T>> triplets() const
    {
        std::vector<Triplet<T>> out;
        for (std::size_t c = 0; c < cols_; ++c) {
            for (const auto& [r, v] : columns_[c]) {
                out.push_back({r, c, v});
            }
        }
        return out;
    }

    SparseMatrix transpose() const
    {
        std::vector<Triplet<T>> t;
        for (std::size_t c = 0; c < cols_; ++c) {
            for (const auto& [r, v] : columns_[c]) {
                t.push_back({c, r, v});
            }
        }
        return from_triplets(cols_, rows_, std::move(t));
    }

    template <class F>
    auto map(F f) const
    {
        using U = decltype(f(std::declval<const T&>()));
        SparseMatrix<U> out(rows_, cols_);
        std::vector<typename SparseMatrix<U>::column_type> cols(cols_);
        for (std::size_t c = 0; c < cols_; ++c) {
            for (const auto& [r, v] : columns_[c]) {
                cols[c].emplace_back(r, f(v));
            }
        }
        return SparseMatrix<U>::from_columns(rows_, std::move(cols));
    }

    std::vector<std::vector<T>> dense() const
    {
        std::vector<std::vector<T>> d(rows_, std::vector<T>(cols_, T{}));
        for (std::size_t c = 0; c < cols_; ++c) {
            for (const auto& [r, v] : columns_[c]) {
                d[r][c] = v;
            }
        }
        return d;
    }

    friend bool operator==(const SparseMatrix& a, const SparseMatrix& b)
    {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.columns_ == b.columns_;
    }

private:
    static void normalize(column_type& col)
    {
        std::sort(col.begin(), col.end(),
                  [](const entry_type& a, const entry_type& b) { return a.first < b.first; });
        column_type out;
        out.reserve(col.size());
        for (auto& e : col) {
            if (!out.empty() && out.back().first == e.first) {
                out.back().second += e.second;
                if (hh::is_zero(out.back().second)) {
                    out.pop_back();
                }
            } else if (!hh::is_zero(e.second)) {
                out.push_back(std::move(e));
            }
        }
        col = std::move(out);
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<column_type> columns_;
};

/// Matrix of the composite map `after o before`. Coefficients multiply in
/// path order, before-entry first: (after o before)(s, c) = sum_r before(r, c) * after(s, r).
/// Over a commutative ring this is the ordinary product after * before.
template <class T>
SparseMatrix<T> compose(const SparseMatrix<T>& after, const SparseMatrix<T>& before)
{
    if (after.cols() != before.rows()) {
        throw std::invalid_argument("compose: shape mismatch " + std::to_string(after.rows()) + "x"
                                    + std::to_string(after.cols()) + " after "
                                    + std::to_string(before.rows()) + "x"
                                    + std::to_string(before.cols()));
    }
    std::vector<typename SparseMatrix<T>::column_type> cols(before.cols());
    for (std::size_t c = 0; c < before.cols(); ++c) {
        for (const auto& [r, w1] : before.column(c)) {
            for (const auto& [s, w2] : after.column(r)) {
                cols[c].emplace_back(s, w1 * w2);
            }
        }
    }
    return SparseMatrix<T>::from_columns(after.rows(), std::move(cols));
}

/// M v for a dense vector over a commutative ring.
template <class T>
std::vector<T> multiply(const SparseMatrix<T>& m, const std::vector<T>& v)
{
    if (v.size() != m.cols()) {
        throw std::invalid_argument("multiply: vector length mismatch");
    }
    std::vector<T> out(m.rows(), T{});
    for (std::size_t c = 0; c < m.cols(); ++c) {
        if (is_zero(v[c])) {
            continue;
        }
        for (const auto& [r, w] : m.column(c)) {
            out[r] += w * v[c];
        }
    }
    return out;
}

template <class T>
SparseMatrix<T> scaled(const SparseMatrix<T>& m, const T& s)
{
    return m.map([&](const T& v) { return T(s * v); });
}

/// Horizontal concatenation [a | b].
template <class T>
SparseMatrix<T> hconcat(const SparseMatrix<T>& a, const SparseMatrix<T>& b)
{
    if (a.rows() != b.rows()) {
        throw std::invalid_argument("hconcat: row count mismatch");
    }
    std::vector<typename SparseMatrix<T>::column_type> cols;
    cols.reserve(a.cols() + b.cols());
    for (std::size_t c = 0; c < a.cols(); ++c) {
        cols.push_back(a.column(c));
    }
    for (std::size_t c = 0; c < b.cols(); ++c) {
        cols.push_back(b.column(c));
    }
    return SparseMatrix<T>::from_columns(a.rows(), std::move(cols));
}

} // namespace hh
