#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "errors.hpp"
#include "matrix.hpp"
#include "tolerances.hpp"

namespace qdt {

/// Eigenpairs of a Hermitian matrix. Eigenvalues ascend; column i of
/// `eigenvectors` belongs to eigenvalues[i]. `groups` partitions the indices
/// into runs of numerically equal eigenvalues.
struct SpectralDecomposition {
    RealVector eigenvalues;
    ComplexMatrix eigenvectors;
    std::vector<std::vector<std::size_t>> groups;
    double degeneracy_tol = 0.0;

    [[nodiscard]] std::size_t dim() const noexcept { return eigenvalues.size(); }

    [[nodiscard]] ComplexVector vector(std::size_t i) const { return eigenvectors.column(i); }

    [[nodiscard]] double group_value(std::size_t g) const {
        double s = 0.0;
        for (auto i : groups[g])
            s += eigenvalues[i];
        return s / static_cast<double>(groups[g].size());
    }

    [[nodiscard]] ComplexMatrix group_projector(std::size_t g) const {
        ComplexMatrix p(dim(), dim());
        for (auto i : groups[g]) {
            const auto v = vector(i);
            p += ComplexMatrix::outer(v, v);
        }
        return p;
    }

    [[nodiscard]] bool simple_spectrum() const noexcept { return groups.size() == eigenvalues.size(); }

    /// V diag(lambda) V^+
    [[nodiscard]] ComplexMatrix reconstruct() const {
        ComplexMatrix a(dim(), dim());
        for (std::size_t i = 0; i < dim(); ++i) {
            const auto v = vector(i);
            a += eigenvalues[i] * ComplexMatrix::outer(v, v);
        }
        return a;
    }
};

namespace detail {

inline double off_diagonal_norm(const ComplexMatrix &m) {
    double s = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (i != j)
                s += std::norm(m(i, j));
    return std::sqrt(s);
}

// One complex Jacobi rotation annihilating m(p, q). The rotation is
// J = diag(1, conj(e)) * [[c, s], [-s, c]] on the (p, q) plane, where e is the
// phase of m(p, q); m <- J^+ m J and v <- v J.
inline void jacobi_rotate(ComplexMatrix &m, ComplexMatrix &v, std::size_t p, std::size_t q) {
    const Complex z = m(p, q);
    const double az = std::abs(z);
    if (az == 0.0)
        return;
    const Complex e = z / az;
    const double a = m(p, p).real();
    const double b = m(q, q).real();
    const double theta = (b - a) / (2.0 * az);
    const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
    const double c = 1.0 / std::sqrt(t * t + 1.0);
    const double s = t * c;

    const Complex j00 = c, j01 = s, j10 = -s * std::conj(e), j11 = c * std::conj(e);
    const std::size_t n = m.rows();

    for (std::size_t k = 0; k < n; ++k) {
        const Complex mkp = m(k, p), mkq = m(k, q);
        m(k, p) = mkp * j00 + mkq * j10;
        m(k, q) = mkp * j01 + mkq * j11;
    }
    for (std::size_t k = 0; k < n; ++k) {
        const Complex mpk = m(p, k), mqk = m(q, k);
        m(p, k) = std::conj(j00) * mpk + std::conj(j10) * mqk;
        m(q, k) = std::conj(j01) * mpk + std::conj(j11) * mqk;
    }
    m(p, q) = 0.0;
    m(q, p) = 0.0;
    m(p, p) = m(p, p).real();
    m(q, q) = m(q, q).real();

    for (std::size_t k = 0; k < n; ++k) {
        const Complex vkp = v(k, p), vkq = v(k, q);
        v(k, p) = vkp * j00 + vkq * j10;
        v(k, q) = vkp * j01 + vkq * j11;
    }
}

// Rotate the column so its first non-negligible component is real positive.
inline void fix_phase(ComplexMatrix &v, std::size_t col) {
    for (std::size_t i = 0; i < v.rows(); ++i) {
        const double a = std::abs(v(i, col));
        if (a > 1e-10) {
            const Complex ph = std::conj(v(i, col)) / a;
            for (std::size_t k = 0; k < v.rows(); ++k)
                v(k, col) *= ph;
            v(i, col) = a;
            return;
        }
    }
}

} // namespace detail

inline double default_degeneracy_tol(const RealVector &sorted_eigenvalues, const Tolerances &tol) {
    const double range = sorted_eigenvalues.empty() ? 0.0 : sorted_eigenvalues.back() - sorted_eigenvalues.front();
    return tol.degeneracy_relative * std::max(1.0, range);
}

/// Consecutive ascending eigenvalues closer than `tol` share a group.
inline std::vector<std::vector<std::size_t>> group_eigenvalues(const RealVector &sorted, double tol) {
    std::vector<std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        if (groups.empty() || sorted[i] - sorted[i - 1] >= tol)
            groups.emplace_back();
        groups.back().push_back(i);
    }
    return groups;
}

/// Cyclic Jacobi eigendecomposition of a Hermitian matrix.
///
/// Throws NotHermitian when ||A - A^+||_F exceeds the relative tolerance and
/// NoConvergence when the sweep cap is reached or the reconstruction residual
/// ||A - V diag(lambda) V^+||_F is above 1e-10 max(1, ||A||_F).
inline SpectralDecomposition hermitian_eig(const ComplexMatrix &a, std::optional<double> degeneracy_tol = std::nullopt,
                                           const Tolerances &tol = default_tolerances()) {
    if (!a.is_square() || a.rows() == 0)
        throw Error(ErrorKind::DimensionMismatch, "eigendecomposition needs a non-empty square matrix");
    if (!a.all_finite())
        throw Error(ErrorKind::InvariantViolation, "matrix has non-finite entries");
    const double scale = frobenius_norm(a);
    if (hermiticity_defect(a) > tol.hermitian_relative * scale)
        throw Error(ErrorKind::NotHermitian, "||A - A^+||_F = " + std::to_string(hermiticity_defect(a)));

    const std::size_t n = a.rows();
    ComplexMatrix m = 0.5 * (a + adjoint(a));
    ComplexMatrix v = ComplexMatrix::identity(n);

    const double target = 1e-15 * std::max(scale, std::numeric_limits<double>::min());
    double previous = std::numeric_limits<double>::infinity();
    bool converged = false;
    for (int sweep = 0; sweep < tol.jacobi_max_sweeps; ++sweep) {
        const double off = detail::off_diagonal_norm(m);
        // Rounding can leave `off` stalled a few ulps above target; a sweep that
        // fails to reduce a tiny residual is as converged as it gets.
        if (off <= target || (off >= previous && off <= 1e-13 * scale)) {
            converged = true;
            break;
        }
        previous = off;
        for (std::size_t p = 0; p + 1 < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q)
                detail::jacobi_rotate(m, v, p, q);
    }
    if (!converged)
        throw Error(ErrorKind::NoConvergence,
                    "Jacobi sweep cap of " + std::to_string(tol.jacobi_max_sweeps) + " reached");

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return m(i, i).real() < m(j, j).real(); });

    SpectralDecomposition sd;
    sd.eigenvalues.resize(n);
    sd.eigenvectors = ComplexMatrix(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        sd.eigenvalues[k] = m(order[k], order[k]).real();
        for (std::size_t i = 0; i < n; ++i)
            sd.eigenvectors(i, k) = v(i, order[k]);
        detail::fix_phase(sd.eigenvectors, k);
    }
    sd.degeneracy_tol = degeneracy_tol.value_or(default_degeneracy_tol(sd.eigenvalues, tol));
    sd.groups = group_eigenvalues(sd.eigenvalues, sd.degeneracy_tol);

    const double residual = frobenius_norm(a - sd.reconstruct());
    if (residual > 1e-10 * std::max(1.0, scale))
        throw Error(ErrorKind::NoConvergence, "reconstruction residual " + std::to_string(residual));
    return sd;
}

/// Eigenvalues only, ascending.
inline RealVector eigenvalues(const ComplexMatrix &a, const Tolerances &tol = default_tolerances()) {
    return hermitian_eig(a, std::nullopt, tol).eigenvalues;
}

} // namespace qdt
