#pragma once

// Dense row-major matrices over exact rings, plus the integer linear algebra
// (Smith/Hermite normal forms, integral kernels) the lattice code relies on.

#include "magnetic/arith.hpp"
#include "magnetic/errors.hpp"

#include <cstddef>
#include <initializer_list>
#include <vector>

namespace magnetic {

template <class T>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
    Matrix(std::initializer_list<std::initializer_list<T>> rows)
    {
        rows_ = rows.size();
        cols_ = rows_ == 0 ? 0 : rows.begin()->size();
        for (const auto& r : rows) {
            if (r.size() != cols_)
                throw InputError("ragged matrix literal");
            data_.insert(data_.end(), r.begin(), r.end());
        }
    }

    static Matrix identity(std::size_t n, const T& one = T(1))
    {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            m(i, i) = one;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::vector<T> row(std::size_t i) const
    {
        return std::vector<T>(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                              data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
    }
    std::vector<T> col(std::size_t j) const
    {
        std::vector<T> c(rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            c[i] = (*this)(i, j);
        return c;
    }

    Matrix transpose() const
    {
        Matrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                t(j, i) = (*this)(i, j);
        return t;
    }

    friend Matrix operator*(const Matrix& a, const Matrix& b)
    {
        if (a.cols_ != b.rows_)
            throw InputError("matrix dimension mismatch");
        Matrix c(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const T& x = a(i, k);
                for (std::size_t j = 0; j < b.cols_; ++j)
                    c(i, j) += x * b(k, j);
            }
        return c;
    }

    friend std::vector<T> operator*(const Matrix& a, const std::vector<T>& v)
    {
        if (a.cols_ != v.size())
            throw InputError("matrix/vector dimension mismatch");
        std::vector<T> r(a.rows_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t j = 0; j < a.cols_; ++j)
                r[i] += a(i, j) * v[j];
        return r;
    }

    friend bool operator==(const Matrix& a, const Matrix& b)
    {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }
    friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

using IntVector = std::vector<Integer>;
using RatVector = std::vector<Rational>;
using IntMatrix = Matrix<Integer>;
using RatMatrix = Matrix<Rational>;

RatMatrix to_rational(const IntMatrix& m);
RatVector to_rational(const IntVector& v);
Rational dot(const RatVector& a, const RatVector& b);
Integer content(const IntVector& v);  // gcd of entries, >= 0

/// U * A * V = diag(d) with U, V unimodular and d_1 | d_2 | ... (d_i >= 0).
struct SmithForm {
    IntMatrix U;
    IntMatrix V;
    IntVector diagonal;
};
SmithForm smith_normal_form(const IntMatrix& a);

/// Row-style Hermite normal form of the row span (zero rows dropped).
IntMatrix hermite_normal_form(const IntMatrix& a);

/// Columns form a basis of { x in Z^n : a x = 0 }.
IntMatrix integer_kernel(const IntMatrix& a);

Integer determinant(const IntMatrix& a);
RatMatrix inverse(const RatMatrix& a);
/// Characteristic polynomial det(x I - A), constant term first.
RatVector characteristic_polynomial(const RatMatrix& a);

}  // namespace magnetic
