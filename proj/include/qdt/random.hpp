#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "operators.hpp"
#include "spectral.hpp"

namespace qdt {

/// Seedable generator with reproducible output on every platform. Distinct
/// (seed, stream) pairs give independent sequences, which is what chunked
/// parallel sampling relies on.
class Rng {
  public:
    explicit Rng(std::uint64_t seed, std::uint64_t stream = 0) {
        std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                          static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32),
                          0x9e3779b9u};
        engine_.seed(seq);
    }

    std::uint64_t next() { return engine_(); }

    /// Uniform on [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Standard normal by Box-Muller; std::normal_distribution is not
    /// reproducible across standard libraries.
    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u1 = uniform();
        while (u1 <= 0.0)
            u1 = uniform();
        const double u2 = uniform();
        const double radius = std::sqrt(-2.0 * std::log(u1));
        spare_ = radius * std::sin(2.0 * std::numbers::pi * u2);
        has_spare_ = true;
        return radius * std::cos(2.0 * std::numbers::pi * u2);
    }

    Complex complex_normal() {
        const double re = normal();
        return {re, normal()};
    }

  private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

inline ComplexVector random_complex_vector(std::size_t dim, Rng &rng) {
    ComplexVector v(dim);
    for (auto &z : v)
        z = rng.complex_normal();
    return v;
}

/// Haar-distributed pure state.
inline StateVector random_state(std::size_t dim, Rng &rng) {
    return StateVector::normalized(random_complex_vector(dim, rng));
}

inline HermitianOperator random_hermitian(std::size_t dim, Rng &rng) {
    ComplexMatrix g(dim, dim);
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j)
            g(i, j) = rng.complex_normal();
    return HermitianOperator(0.5 * (g + adjoint(g)));
}

/// Orthonormalized complex Gaussian columns.
inline UnitaryOperator random_unitary(std::size_t dim, Rng &rng) {
    std::vector<ComplexVector> cols;
    for (std::size_t k = 0; k < dim; ++k)
        cols.push_back(random_complex_vector(dim, rng));
    const auto q = orthonormalize(cols);
    ComplexMatrix w(dim, dim);
    for (std::size_t j = 0; j < dim; ++j)
        for (std::size_t i = 0; i < dim; ++i)
            w(i, j) = q[j][i];
    return UnitaryOperator(w);
}

/// G G^+ / tr(G G^+) with G of size dim x rank; rank 0 means full rank.
inline DensityOperator random_density(std::size_t dim, Rng &rng, std::size_t rank = 0) {
    if (rank == 0)
        rank = dim;
    ComplexMatrix g(dim, rank);
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < rank; ++j)
            g(i, j) = rng.complex_normal();
    ComplexMatrix rho = g * adjoint(g);
    rho *= Complex(1.0 / trace(rho).real());
    return DensityOperator(0.5 * (rho + adjoint(rho)));
}

} // namespace qdt
