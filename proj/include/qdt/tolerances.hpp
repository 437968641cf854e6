#pragma once

#include <string>
#include <utility>
#include <vector>

namespace qdt {

/// Numeric thresholds used across the engine. Every constructor and operation
/// that validates an invariant takes one of these, so callers can tighten or
/// relax them; the defaults are the documented contract.
struct Tolerances {
    double hermitian_entry = 1e-12;     // |A_ij - conj(A_ji)| for HermitianOperator
    double hermitian_relative = 1e-8;   // ||A - A^+||_F / ||A||_F accepted by the eigensolver
    double unit_norm = 1e-10;           // | ||psi|| - 1 |
    double idempotence = 1e-10;         // ||P^2 - P||_F
    double projector_trace = 1e-8;      // |tr P - rank|
    double density_eigenvalue = 1e-10;  // smallest eigenvalue allowed for rho is -this
    double density_trace = 1e-10;       // |tr rho - 1|
    double effect_eigenvalue = 1e-10;   // effect spectrum within [-tol, 1 + tol]
    double span_rank = 1e-10;           // relative singular-value cutoff for spans
    double orthonormality = 1e-10;      // ||V^+V - I||_F for supplied bases
    double unitary = 1e-10;             // ||W^+W - I||_F
    double degeneracy_relative = 1e-8;  // eigenvalue grouping, scaled by max(1, spectral range)
    double zero_probability = 1e-12;    // conditioning on an event below this is an error
    double value_match = 1e-9;          // relative tolerance for looking up a variable's value
    double projector_match = 1e-8;      // Frobenius distance for identifying eigenprojectors
    double reconstruction_noise = 1e-6; // max |tr(rho F_i) - mu_i| accepted by reconstruction
    double gram_condition = 1e6;        // informationally complete sets must stay below this
    int jacobi_max_sweeps = 100;

    [[nodiscard]] std::vector<std::pair<std::string, double>> listing() const {
        return {
            {"hermitian_entry", hermitian_entry},
            {"hermitian_relative", hermitian_relative},
            {"unit_norm", unit_norm},
            {"idempotence", idempotence},
            {"projector_trace", projector_trace},
            {"density_eigenvalue", density_eigenvalue},
            {"density_trace", density_trace},
            {"effect_eigenvalue", effect_eigenvalue},
            {"span_rank", span_rank},
            {"orthonormality", orthonormality},
            {"unitary", unitary},
            {"degeneracy_relative", degeneracy_relative},
            {"zero_probability", zero_probability},
            {"value_match", value_match},
            {"projector_match", projector_match},
            {"reconstruction_noise", reconstruction_noise},
            {"gram_condition", gram_condition},
            {"jacobi_max_sweeps", static_cast<double>(jacobi_max_sweeps)},
        };
    }
};

inline const Tolerances &default_tolerances() {
    static const Tolerances tol{};
    return tol;
}

} // namespace qdt
