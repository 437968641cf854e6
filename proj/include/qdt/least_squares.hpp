#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "errors.hpp"

namespace qdt {

/// Dense real matrix, row-major. Only what the least-squares solver needs.
struct RealMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> data;

    RealMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}

    double &operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
};

/// argmin_x ||A x - b||_2 by Householder QR. Requires rows >= cols and full
/// column rank; a pivot below `rank_tol` times the largest column norm throws
/// DegenerateSpan.
inline std::vector<double> solve_least_squares(RealMatrix a, std::vector<double> b, double rank_tol = 1e-12) {
    const std::size_t m = a.rows, n = a.cols;
    if (b.size() != m)
        throw Error(ErrorKind::DimensionMismatch, "least squares: right-hand side length mismatch");
    if (m < n)
        throw Error(ErrorKind::DegenerateSpan, "least squares: fewer equations than unknowns");

    double scale = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < m; ++i)
            s += a(i, j) * a(i, j);
        scale = std::max(scale, std::sqrt(s));
    }

    std::vector<double> diag(n);
    for (std::size_t k = 0; k < n; ++k) {
        double alpha = 0.0;
        for (std::size_t i = k; i < m; ++i)
            alpha += a(i, k) * a(i, k);
        alpha = std::sqrt(alpha);
        if (alpha <= rank_tol * scale)
            throw Error(ErrorKind::DegenerateSpan, "least squares: rank-deficient design at column " + std::to_string(k));
        if (a(k, k) > 0.0)
            alpha = -alpha;
        // v = x - alpha e_k stored in place of column k.
        a(k, k) -= alpha;
        double vnorm2 = 0.0;
        for (std::size_t i = k; i < m; ++i)
            vnorm2 += a(i, k) * a(i, k);
        for (std::size_t j = k + 1; j < n; ++j) {
            double dot = 0.0;
            for (std::size_t i = k; i < m; ++i)
                dot += a(i, k) * a(i, j);
            const double f = 2.0 * dot / vnorm2;
            for (std::size_t i = k; i < m; ++i)
                a(i, j) -= f * a(i, k);
        }
        double dot = 0.0;
        for (std::size_t i = k; i < m; ++i)
            dot += a(i, k) * b[i];
        const double f = 2.0 * dot / vnorm2;
        for (std::size_t i = k; i < m; ++i)
            b[i] -= f * a(i, k);
        diag[k] = alpha;
    }

    std::vector<double> x(n);
    for (std::size_t kk = n; kk-- > 0;) {
        double s = b[kk];
        for (std::size_t j = kk + 1; j < n; ++j)
            s -= a(kk, j) * x[j];
        x[kk] = s / diag[kk];
    }
    return x;
}

} // namespace qdt
