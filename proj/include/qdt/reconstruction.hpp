#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "born.hpp"
#include "eigen.hpp"
#include "least_squares.hpp"
#include "operators.hpp"

namespace qdt {

/// One evaluation mu(F) of a generalized probability measure.
struct GPMSample {
    Effect effect;
    double probability;
};

struct Reconstruction {
    DensityOperator density;
    double max_residual = 0.0;        // max_i |tr(rho_ls F_i) - mu_i| of the least-squares solution
    double min_eigenvalue = 0.0;      // smallest eigenvalue before projection
    bool projected = false;           // rho_ls was moved onto the PSD trace-1 set
    double adjustment = 0.0;          // ||rho - rho_ls||_F
};

namespace detail {

// Orthonormal (Hilbert-Schmidt) basis of the traceless Hermitian r x r
// matrices: symmetric and antisymmetric off-diagonal pairs, then the
// generalized Gell-Mann diagonals.
inline std::vector<ComplexMatrix> traceless_hermitian_basis(std::size_t r) {
    std::vector<ComplexMatrix> basis;
    const double h = 1.0 / std::sqrt(2.0);
    for (std::size_t j = 0; j < r; ++j)
        for (std::size_t k = j + 1; k < r; ++k) {
            ComplexMatrix s(r, r), a(r, r);
            s(j, k) = h;
            s(k, j) = h;
            a(j, k) = Complex(0.0, -h);
            a(k, j) = Complex(0.0, h);
            basis.push_back(std::move(s));
            basis.push_back(std::move(a));
        }
    for (std::size_t l = 1; l < r; ++l) {
        ComplexMatrix d(r, r);
        const double c = 1.0 / std::sqrt(static_cast<double>(l * (l + 1)));
        for (std::size_t i = 0; i < l; ++i)
            d(i, i) = c;
        d(l, l) = -static_cast<double>(l) * c;
        basis.push_back(std::move(d));
    }
    return basis;
}

// Euclidean projection of a vector onto the probability simplex.
inline RealVector project_to_simplex(const RealVector &x) {
    RealVector s = x;
    std::sort(s.begin(), s.end(), std::greater<>());
    double cumulative = 0.0, shift = 0.0;
    for (std::size_t k = 0; k < s.size(); ++k) {
        cumulative += s[k];
        const double t = (cumulative - 1.0) / static_cast<double>(k + 1);
        if (s[k] - t > 0.0)
            shift = t;
    }
    RealVector out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        out[i] = std::max(0.0, x[i] - shift);
    return out;
}

} // namespace detail

/// Condition number of the Gram matrix of the effects' coordinates in the
/// r^2-dimensional real space of Hermitian matrices. Infinite when the
/// effects do not span it.
inline double span_condition_number(std::span<const Effect> effects, const Tolerances &tol = default_tolerances()) {
    if (effects.empty())
        return std::numeric_limits<double>::infinity();
    const std::size_t r = effects.front().dim();
    const std::size_t r2 = r * r;
    // Coordinates in the orthonormal basis {I/sqrt(r)} u traceless basis.
    auto basis = detail::traceless_hermitian_basis(r);
    basis.insert(basis.begin(), ComplexMatrix::identity(r) * Complex(1.0 / std::sqrt(static_cast<double>(r))));
    ComplexMatrix gram(r2, r2);
    for (const auto &f : effects) {
        require_same_dim(f.dim(), r, "effect dimension");
        RealVector x(r2);
        for (std::size_t k = 0; k < r2; ++k)
            x[k] = trace_of_product(basis[k], f.matrix()).real();
        for (std::size_t a = 0; a < r2; ++a)
            for (std::size_t b = 0; b < r2; ++b)
                gram(a, b) += x[a] * x[b];
    }
    const auto ev = eigenvalues(gram, tol);
    if (ev.front() <= tol.span_rank * ev.back())
        return std::numeric_limits<double>::infinity();
    return ev.back() / ev.front();
}

/// Density operator from probabilities mu_i = tr(rho F_i).
///
/// Solves the least-squares problem over Hermitian trace-1 matrices (trace
/// pinned by writing rho = I/r + traceless part), rejects the samples when the
/// best fit misses some mu_i by more than the noise bound, and moves a
/// solution with negative eigenvalues to the nearest PSD trace-1 matrix in
/// Frobenius norm (eigenvalues projected onto the simplex).
inline Reconstruction reconstruct_density(std::span<const GPMSample> samples,
                                          const Tolerances &tol = default_tolerances()) {
    if (samples.empty())
        throw Error(ErrorKind::InsufficientSpan, "no samples");
    const std::size_t r = samples.front().effect.dim();
    std::vector<Effect> effects;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        require_same_dim(samples[i].effect.dim(), r, "sample effect dimension");
        const double p = samples[i].probability;
        if (!(p >= 0.0 && p <= 1.0))
            throw Error(ErrorKind::InvariantViolation,
                        "sample " + std::to_string(i) + " has probability " + std::to_string(p) + " outside [0, 1]");
        effects.push_back(samples[i].effect);
    }
    const double cond = span_condition_number(effects, tol);
    if (!std::isfinite(cond))
        throw Error(ErrorKind::InsufficientSpan, std::to_string(samples.size()) +
                                                     " effects do not span the Hermitian operators of dimension " +
                                                     std::to_string(r));

    const auto basis = detail::traceless_hermitian_basis(r);
    const double inv_r = 1.0 / static_cast<double>(r);
    RealMatrix design(samples.size(), basis.size());
    std::vector<double> rhs(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const auto &f = samples[i].effect.matrix();
        for (std::size_t k = 0; k < basis.size(); ++k)
            design(i, k) = trace_of_product(basis[k], f).real();
        rhs[i] = samples[i].probability - inv_r * trace(f).real();
    }
    const auto coeff = solve_least_squares(design, rhs);

    ComplexMatrix rho_ls = ComplexMatrix::identity(r) * Complex(inv_r);
    for (std::size_t k = 0; k < basis.size(); ++k)
        rho_ls += coeff[k] * basis[k];

    Reconstruction out{DensityOperator::maximally_mixed(r)};
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double fit = trace_of_product(rho_ls, samples[i].effect.matrix()).real();
        out.max_residual = std::max(out.max_residual, std::abs(fit - samples[i].probability));
    }
    if (out.max_residual > tol.reconstruction_noise)
        throw Error(ErrorKind::InconsistentSamples, "best fit misses a sample by " + std::to_string(out.max_residual) +
                                                        " (noise bound " + std::to_string(tol.reconstruction_noise) +
                                                        ")");

    const auto sd = hermitian_eig(rho_ls, std::nullopt, tol);
    out.min_eigenvalue = sd.eigenvalues.front();
    ComplexMatrix rho = rho_ls;
    if (out.min_eigenvalue < -tol.density_eigenvalue) {
        const auto clipped = detail::project_to_simplex(sd.eigenvalues);
        rho = ComplexMatrix(r, r);
        for (std::size_t i = 0; i < r; ++i) {
            const auto v = sd.vector(i);
            rho += clipped[i] * ComplexMatrix::outer(v, v);
        }
        out.projected = true;
        out.adjustment = frobenius_norm(rho - rho_ls);
    }
    out.density = DensityOperator(rho, tol);
    return out;
}

} // namespace qdt
