#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <type_traits>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "hodgewalk/errors.hpp"

namespace hodgewalk {

/// (row, col, value) entry of a sparse matrix.
template <typename T>
struct Triplet {
    std::size_t row;
    std::size_t col;
    T value;
};

/// Compressed-row sparse matrix over a scalar type T (double, int64, Rational).
///
/// Entries are kept sorted by (row, col) and explicit zeros are never stored, so two
/// matrices holding the same values compare equal and iterate in the same order.
template <typename T>
class BasicSparse {
public:
    using value_type = T;

    BasicSparse() = default;

    BasicSparse(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), row_ptr_(rows + 1, 0) {}

    /// Duplicates are summed; entries that sum to zero are dropped.
    BasicSparse(std::size_t rows, std::size_t cols, std::vector<Triplet<T>> triplets)
        : rows_(rows), cols_(cols), row_ptr_(rows + 1, 0)
    {
        for (const auto& t : triplets) {
            if (t.row >= rows || t.col >= cols) throw IndexError("sparse triplet out of range");
        }
        std::sort(triplets.begin(), triplets.end(), [](const auto& a, const auto& b) {
            return a.row != b.row ? a.row < b.row : a.col < b.col;
        });
        col_.reserve(triplets.size());
        val_.reserve(triplets.size());
        std::size_t i = 0;
        while (i < triplets.size()) {
            const std::size_t r = triplets[i].row;
            const std::size_t c = triplets[i].col;
            T sum = triplets[i].value;
            for (++i; i < triplets.size() && triplets[i].row == r && triplets[i].col == c; ++i) {
                sum += triplets[i].value;
            }
            if (!(sum == T{})) {
                col_.push_back(c);
                val_.push_back(sum);
                ++row_ptr_[r + 1];
            }
        }
        for (std::size_t r = 0; r < rows; ++r) row_ptr_[r + 1] += row_ptr_[r];
    }

    static BasicSparse identity(std::size_t n) { return diagonal(std::vector<T>(n, T{1})); }

    static BasicSparse diagonal(std::span<const T> d)
    {
        std::vector<Triplet<T>> t;
        t.reserve(d.size());
        for (std::size_t i = 0; i < d.size(); ++i) t.push_back({i, i, d[i]});
        return BasicSparse(d.size(), d.size(), std::move(t));
    }
    static BasicSparse diagonal(const std::vector<T>& d) { return diagonal(std::span<const T>(d)); }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    std::size_t nnz() const noexcept { return val_.size(); }

    std::span<const std::size_t> row_cols(std::size_t r) const
    {
        return {col_.data() + row_ptr_[r], row_ptr_[r + 1] - row_ptr_[r]};
    }
    std::span<const T> row_values(std::size_t r) const
    {
        return {val_.data() + row_ptr_[r], row_ptr_[r + 1] - row_ptr_[r]};
    }

    T at(std::size_t r, std::size_t c) const
    {
        if (r >= rows_ || c >= cols_) throw IndexError("sparse index out of range");
        const auto cols = row_cols(r);
        const auto it = std::lower_bound(cols.begin(), cols.end(), c);
        if (it == cols.end() || *it != c) return T{};
        return val_[row_ptr_[r] + static_cast<std::size_t>(it - cols.begin())];
    }

    std::vector<Triplet<T>> triplets() const
    {
        std::vector<Triplet<T>> out;
        out.reserve(nnz());
        for (std::size_t r = 0; r < rows_; ++r) {
            for (std::size_t k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) out.push_back({r, col_[k], val_[k]});
        }
        return out;
    }

    /// y = A x
    template <typename Vec>
    void apply(const Vec& x, Vec& y) const
    {
        check_size(static_cast<std::size_t>(x.size()), cols_, "apply");
        y.resize(rows_);
        for (std::size_t r = 0; r < rows_; ++r) {
            T acc{};
            for (std::size_t k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) acc += val_[k] * x[col_[k]];
            y[r] = acc;
        }
    }

    /// y = A^T x
    template <typename Vec>
    void apply_transpose(const Vec& x, Vec& y) const
    {
        check_size(static_cast<std::size_t>(x.size()), rows_, "apply_transpose");
        y.resize(cols_);
        for (std::size_t c = 0; c < cols_; ++c) y[c] = T{};
        for (std::size_t r = 0; r < rows_; ++r) {
            const T xr = x[r];
            for (std::size_t k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) y[col_[k]] += val_[k] * xr;
        }
    }

    BasicSparse transpose() const
    {
        std::vector<Triplet<T>> t;
        t.reserve(nnz());
        for (std::size_t r = 0; r < rows_; ++r) {
            for (std::size_t k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) t.push_back({col_[k], r, val_[k]});
        }
        return BasicSparse(cols_, rows_, std::move(t));
    }

    /// Entrywise map; zero results are dropped.
    template <typename F>
    auto map(F&& f) const
    {
        using U = std::decay_t<decltype(f(std::declval<T>()))>;
        std::vector<Triplet<U>> t;
        t.reserve(nnz());
        for (std::size_t r = 0; r < rows_; ++r) {
            for (std::size_t k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) t.push_back({r, col_[k], f(val_[k])});
        }
        return BasicSparse<U>(rows_, cols_, std::move(t));
    }

    template <typename U>
    BasicSparse<U> cast() const
    {
        return map([](const T& v) { return static_cast<U>(v); });
    }

    /// max(A, 0) entrywise
    BasicSparse positive_part() const
    {
        return map([](const T& v) { return T{} < v ? v : T{}; });
    }
    /// max(-A, 0) entrywise
    BasicSparse negative_part() const
    {
        return map([](const T& v) { return v < T{} ? -v : T{}; });
    }
    BasicSparse abs() const
    {
        return map([](const T& v) { return v < T{} ? -v : v; });
    }

    std::vector<T> row_sums() const
    {
        std::vector<T> s(rows_, T{});
        for (std::size_t r = 0; r < rows_; ++r) {
            for (std::size_t k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) s[r] += val_[k];
        }
        return s;
    }

    std::vector<T> col_sums() const
    {
        std::vector<T> s(cols_, T{});
        for (std::size_t k = 0; k < nnz(); ++k) s[col_[k]] += val_[k];
        return s;
    }

    /// diag(d) * A
    BasicSparse scale_rows(std::span<const T> d) const
    {
        check_size(d.size(), rows_, "scale_rows");
        std::vector<Triplet<T>> t = triplets();
        for (auto& e : t) e.value = d[e.row] * e.value;
        return BasicSparse(rows_, cols_, std::move(t));
    }
    BasicSparse scale_rows(const std::vector<T>& d) const { return scale_rows(std::span<const T>(d)); }

    /// A * diag(d)
    BasicSparse scale_cols(std::span<const T> d) const
    {
        check_size(d.size(), cols_, "scale_cols");
        std::vector<Triplet<T>> t = triplets();
        for (auto& e : t) e.value = e.value * d[e.col];
        return BasicSparse(rows_, cols_, std::move(t));
    }
    BasicSparse scale_cols(const std::vector<T>& d) const { return scale_cols(std::span<const T>(d)); }

    friend BasicSparse operator*(const BasicSparse& a, const BasicSparse& b)
    {
        if (a.cols_ != b.rows_) throw DimensionError("sparse product: inner dimensions differ");
        // Gustavson row-by-row product with a dense accumulator.
        std::vector<T> acc(b.cols_, T{});
        std::vector<std::size_t> mark(b.cols_, static_cast<std::size_t>(-1));
        std::vector<std::size_t> touched;
        std::vector<Triplet<T>> t;
        for (std::size_t r = 0; r < a.rows_; ++r) {
            touched.clear();
            for (std::size_t ka = a.row_ptr_[r]; ka < a.row_ptr_[r + 1]; ++ka) {
                const std::size_t mid = a.col_[ka];
                const T av = a.val_[ka];
                for (std::size_t kb = b.row_ptr_[mid]; kb < b.row_ptr_[mid + 1]; ++kb) {
                    const std::size_t c = b.col_[kb];
                    if (mark[c] != r) {
                        mark[c] = r;
                        acc[c] = T{};
                        touched.push_back(c);
                    }
                    acc[c] += av * b.val_[kb];
                }
            }
            for (const std::size_t c : touched) t.push_back({r, c, acc[c]});
        }
        return BasicSparse(a.rows_, b.cols_, std::move(t));
    }

    friend BasicSparse operator+(const BasicSparse& a, const BasicSparse& b)
    {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw DimensionError("sparse sum: shapes differ");
        auto t = a.triplets();
        auto tb = b.triplets();
        t.insert(t.end(), tb.begin(), tb.end());
        return BasicSparse(a.rows_, a.cols_, std::move(t));
    }

    friend BasicSparse operator-(const BasicSparse& a) { return a.map([](const T& v) { return -v; }); }
    friend BasicSparse operator-(const BasicSparse& a, const BasicSparse& b) { return a + (-b); }

    friend BasicSparse operator*(const T& s, const BasicSparse& a)
    {
        return a.map([&s](const T& v) { return s * v; });
    }

    friend bool operator==(const BasicSparse& a, const BasicSparse& b)
    {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.row_ptr_ == b.row_ptr_ && a.col_ == b.col_ &&
               a.val_ == b.val_;
    }

    bool is_symmetric() const { return *this == transpose(); }

    Eigen::MatrixXd to_dense() const
    {
        Eigen::MatrixXd m = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(rows_), static_cast<Eigen::Index>(cols_));
        for (std::size_t r = 0; r < rows_; ++r) {
            for (std::size_t k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) {
                m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(col_[k])) = static_cast<double>(val_[k]);
            }
        }
        return m;
    }

private:
    static void check_size(std::size_t got, std::size_t want, const char* what)
    {
        if (got != want) {
            throw DimensionError(std::string("sparse ") + what + ": expected length " + std::to_string(want) +
                                 ", got " + std::to_string(got));
        }
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<std::size_t> row_ptr_{0};
    std::vector<std::size_t> col_;
    std::vector<T> val_;
};

using SparseOperator = BasicSparse<double>;

inline Eigen::VectorXd operator*(const SparseOperator& a, const Eigen::VectorXd& x)
{
    Eigen::VectorXd y;
    a.apply(x, y);
    return y;
}

/// Largest absolute entry (0 for an empty matrix).
inline double max_abs(const SparseOperator& a)
{
    double m = 0.0;
    for (std::size_t r = 0; r < a.rows(); ++r) {
        for (double v : a.row_values(r)) m = std::max(m, std::abs(v));
    }
    return m;
}

}  // namespace hodgewalk
