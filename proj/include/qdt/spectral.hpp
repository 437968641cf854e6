#pragma once

#include <concepts>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "eigen.hpp"
#include "operators.hpp"

namespace qdt {

/// f(A) = sum_g f(lambda_g) P_g over the eigenvalue groups of A. Within a
/// group f is evaluated at the group mean so degenerate eigenvalues map to a
/// single value.
template <std::invocable<double> F>
HermitianOperator spectral_function(const HermitianOperator &a, F &&f, const Tolerances &tol = default_tolerances()) {
    const auto sd = a.eig(tol);
    ComplexMatrix out(a.dim(), a.dim());
    for (std::size_t g = 0; g < sd.groups.size(); ++g) {
        const double fv = static_cast<double>(f(sd.group_value(g)));
        if (fv != 0.0)
            out += fv * sd.group_projector(g);
    }
    return HermitianOperator(out, tol);
}

/// Orthonormal basis of span(vectors) by twice-applied modified Gram-Schmidt.
/// Throws DegenerateSpan when a vector is (numerically) in the span of the
/// preceding ones.
inline std::vector<ComplexVector> orthonormalize(std::span<const ComplexVector> vectors,
                                                 const Tolerances &tol = default_tolerances()) {
    std::vector<ComplexVector> basis;
    for (std::size_t k = 0; k < vectors.size(); ++k) {
        ComplexVector w = vectors[k];
        const double original = norm(w);
        if (!basis.empty())
            require_same_dim(w.size(), basis.front().size(), "orthonormalize");
        for (int pass = 0; pass < 2; ++pass)
            for (const auto &q : basis) {
                const Complex c = inner(q, w);
                for (std::size_t i = 0; i < w.size(); ++i)
                    w[i] -= c * q[i];
            }
        const double n = norm(w);
        if (!(original > 0.0) || n <= tol.span_rank * original)
            throw Error(ErrorKind::DegenerateSpan, "vector " + std::to_string(k) +
                                                       " is linearly dependent on the preceding vectors");
        for (auto &z : w)
            z /= n;
        basis.push_back(std::move(w));
    }
    return basis;
}

inline Projector projector_onto_span(std::span<const StateVector> vectors,
                                     const Tolerances &tol = default_tolerances()) {
    if (vectors.empty())
        throw Error(ErrorKind::DegenerateSpan, "cannot span an empty list of vectors");
    std::vector<ComplexVector> raw;
    raw.reserve(vectors.size());
    for (const auto &v : vectors)
        raw.push_back(v.amplitudes());
    const auto basis = orthonormalize(raw, tol);
    ComplexMatrix p(vectors.front().dim(), vectors.front().dim());
    for (const auto &q : basis)
        p += ComplexMatrix::outer(q, q);
    return Projector(p, tol);
}

} // namespace qdt
