#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "errors.hpp"

namespace qdt {

using Complex = std::complex<double>;
using ComplexVector = std::vector<Complex>;
using RealVector = std::vector<double>;

inline constexpr Complex I_unit{0.0, 1.0};

/// Dense row-major complex matrix. Sizes are fixed at construction.
class ComplexMatrix {
  public:
    ComplexMatrix() = default;
    ComplexMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows) {
        rows_ = rows.size();
        cols_ = rows_ == 0 ? 0 : rows.begin()->size();
        data_.reserve(rows_ * cols_);
        for (const auto &row : rows) {
            if (row.size() != cols_)
                throw Error(ErrorKind::DimensionMismatch, "ragged matrix literal");
            data_.insert(data_.end(), row.begin(), row.end());
        }
    }

    static ComplexMatrix identity(std::size_t n) {
        ComplexMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            m(i, i) = 1.0;
        return m;
    }

    static ComplexMatrix diagonal(std::span<const double> d) {
        ComplexMatrix m(d.size(), d.size());
        for (std::size_t i = 0; i < d.size(); ++i)
            m(i, i) = d[i];
        return m;
    }

    static ComplexMatrix diagonal(std::initializer_list<double> d) {
        return diagonal(std::span<const double>(d.begin(), d.size()));
    }

    /// |u><v|
    static ComplexMatrix outer(std::span<const Complex> u, std::span<const Complex> v) {
        ComplexMatrix m(u.size(), v.size());
        for (std::size_t i = 0; i < u.size(); ++i)
            for (std::size_t j = 0; j < v.size(); ++j)
                m(i, j) = u[i] * std::conj(v[j]);
        return m;
    }

    [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
    [[nodiscard]] std::size_t cols() const noexcept { return cols_; }
    [[nodiscard]] bool is_square() const noexcept { return rows_ == cols_; }

    Complex &operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Complex &operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    [[nodiscard]] std::span<const Complex> data() const noexcept { return data_; }

    [[nodiscard]] ComplexVector column(std::size_t j) const {
        ComplexVector c(rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            c[i] = (*this)(i, j);
        return c;
    }

    [[nodiscard]] bool all_finite() const noexcept {
        for (const auto &z : data_)
            if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
                return false;
        return true;
    }

    ComplexMatrix &operator+=(const ComplexMatrix &o) {
        require_same_shape(o, "+=");
        for (std::size_t k = 0; k < data_.size(); ++k)
            data_[k] += o.data_[k];
        return *this;
    }
    ComplexMatrix &operator-=(const ComplexMatrix &o) {
        require_same_shape(o, "-=");
        for (std::size_t k = 0; k < data_.size(); ++k)
            data_[k] -= o.data_[k];
        return *this;
    }
    ComplexMatrix &operator*=(Complex s) {
        for (auto &z : data_)
            z *= s;
        return *this;
    }

    friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix &b) { return a += b; }
    friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix &b) { return a -= b; }
    friend ComplexMatrix operator*(ComplexMatrix a, Complex s) { return a *= s; }
    friend ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }

    friend bool operator==(const ComplexMatrix &, const ComplexMatrix &) = default;

  private:
    void require_same_shape(const ComplexMatrix &o, const char *op) const {
        if (rows_ != o.rows_ || cols_ != o.cols_)
            throw Error(ErrorKind::DimensionMismatch,
                        std::string("operand shapes differ in ") + op + ": " + std::to_string(rows_) + "x" +
                            std::to_string(cols_) + " vs " + std::to_string(o.rows_) + "x" + std::to_string(o.cols_));
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Complex> data_;
};

inline ComplexMatrix adjoint(const ComplexMatrix &m) {
    ComplexMatrix a(m.cols(), m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            a(j, i) = std::conj(m(i, j));
    return a;
}

inline ComplexMatrix matmul(const ComplexMatrix &a, const ComplexMatrix &b) {
    if (a.cols() != b.rows())
        throw Error(ErrorKind::DimensionMismatch, "matmul: " + std::to_string(a.rows()) + "x" +
                                                      std::to_string(a.cols()) + " times " +
                                                      std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
    ComplexMatrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const Complex aik = a(i, k);
            if (aik == Complex{})
                continue;
            for (std::size_t j = 0; j < b.cols(); ++j)
                c(i, j) += aik * b(k, j);
        }
    return c;
}

inline ComplexMatrix operator*(const ComplexMatrix &a, const ComplexMatrix &b) { return matmul(a, b); }

inline ComplexVector matvec(const ComplexMatrix &m, std::span<const Complex> v) {
    if (m.cols() != v.size())
        throw Error(ErrorKind::DimensionMismatch, "matrix-vector product: " + std::to_string(m.cols()) +
                                                      " columns vs vector of length " + std::to_string(v.size()));
    ComplexVector out(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Complex acc{};
        for (std::size_t j = 0; j < m.cols(); ++j)
            acc += m(i, j) * v[j];
        out[i] = acc;
    }
    return out;
}

inline Complex trace(const ComplexMatrix &m) {
    if (!m.is_square())
        throw Error(ErrorKind::DimensionMismatch, "trace of a non-square matrix");
    Complex t{};
    for (std::size_t i = 0; i < m.rows(); ++i)
        t += m(i, i);
    return t;
}

/// tr(AB) without forming AB.
inline Complex trace_of_product(const ComplexMatrix &a, const ComplexMatrix &b) {
    if (a.cols() != b.rows() || a.rows() != b.cols())
        throw Error(ErrorKind::DimensionMismatch, "trace_of_product: incompatible shapes");
    Complex t{};
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k)
            t += a(i, k) * b(k, i);
    return t;
}

inline double frobenius_norm(const ComplexMatrix &m) {
    double s = 0.0;
    for (const auto &z : m.data())
        s += std::norm(z);
    return std::sqrt(s);
}

/// Kronecker product; block (i, j) of the result is a(i, j) * b.
inline ComplexMatrix tensor_product(const ComplexMatrix &a, const ComplexMatrix &b) {
    ComplexMatrix k(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            for (std::size_t p = 0; p < b.rows(); ++p)
                for (std::size_t q = 0; q < b.cols(); ++q)
                    k(i * b.rows() + p, j * b.cols() + q) = a(i, j) * b(p, q);
    return k;
}

inline ComplexVector tensor_product(std::span<const Complex> u, std::span<const Complex> v) {
    ComplexVector k;
    k.reserve(u.size() * v.size());
    for (const auto &x : u)
        for (const auto &y : v)
            k.push_back(x * y);
    return k;
}

inline ComplexMatrix commutator(const ComplexMatrix &a, const ComplexMatrix &b) { return a * b - b * a; }

/// <u|v>, antilinear in the first argument.
inline Complex inner(std::span<const Complex> u, std::span<const Complex> v) {
    if (u.size() != v.size())
        throw Error(ErrorKind::DimensionMismatch, "inner product of vectors of length " + std::to_string(u.size()) +
                                                      " and " + std::to_string(v.size()));
    Complex s{};
    for (std::size_t i = 0; i < u.size(); ++i)
        s += std::conj(u[i]) * v[i];
    return s;
}

inline double norm_squared(std::span<const Complex> v) {
    double s = 0.0;
    for (const auto &z : v)
        s += std::norm(z);
    return s;
}

inline double norm(std::span<const Complex> v) { return std::sqrt(norm_squared(v)); }

/// ||A - A^+||_F
inline double hermiticity_defect(const ComplexMatrix &m) {
    if (!m.is_square())
        throw Error(ErrorKind::DimensionMismatch, "hermiticity of a non-square matrix");
    double s = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            s += std::norm(m(i, j) - std::conj(m(j, i)));
    return std::sqrt(s);
}

inline double max_abs_difference(const ComplexMatrix &a, const ComplexMatrix &b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw Error(ErrorKind::DimensionMismatch, "max_abs_difference: shapes differ");
    double m = 0.0;
    for (std::size_t k = 0; k < a.data().size(); ++k)
        m = std::max(m, std::abs(a.data()[k] - b.data()[k]));
    return m;
}

} // namespace qdt
