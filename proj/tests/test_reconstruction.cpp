#include <catch_amalgamated.hpp>

#include "support.hpp"

using namespace qdt;
using Catch::Matchers::WithinAbs;

namespace {

std::vector<GPMSample> exact_samples(const DensityOperator &rho, const std::vector<Effect> &effects) {
    std::vector<GPMSample> out;
    for (const auto &f : effects)
        out.push_back({f, gpm_evaluate(rho, f)});
    return out;
}

ErrorKind failure_kind(std::span<const GPMSample> samples) {
    try {
        (void)reconstruct_density(samples);
    } catch (const Error &e) {
        return e.kind();
    }
    FAIL("reconstruction succeeded");
    return ErrorKind::InvariantViolation;
}

} // namespace

TEST_CASE("traceless basis is orthonormal", "[reconstruction]") {
    for (std::size_t r = 2; r <= 5; ++r) {
        const auto basis = detail::traceless_hermitian_basis(r);
        REQUIRE(basis.size() == r * r - 1);
        for (std::size_t a = 0; a < basis.size(); ++a) {
            CHECK(std::abs(trace(basis[a])) < 1e-14);
            CHECK(hermiticity_defect(basis[a]) < 1e-15);
            for (std::size_t b = 0; b < basis.size(); ++b)
                CHECK_THAT(trace_of_product(basis[a], basis[b]).real(), WithinAbs(a == b ? 1.0 : 0.0, 1e-14));
        }
    }
}

TEST_CASE("simplex projection", "[reconstruction]") {
    const auto p = detail::project_to_simplex({1.2071067811865475, -0.2071067811865475});
    CHECK_THAT(p[0], WithinAbs(1.0, 1e-15));
    CHECK(p[1] == 0.0);
    const auto q = detail::project_to_simplex({0.5, 0.3, 0.2});
    CHECK_THAT(q[1], WithinAbs(0.3, 1e-15));
    const auto s = detail::project_to_simplex({0.7, 0.6, -0.1});
    CHECK_THAT(s[0], WithinAbs(0.55, 1e-15));
    CHECK_THAT(s[1], WithinAbs(0.45, 1e-15));
}

TEST_CASE("maximally mixed state round trip", "[reconstruction]") {
    for (std::size_t r = 2; r <= 6; ++r) {
        const auto rho = DensityOperator::maximally_mixed(r);
        const auto rec = reconstruct_density(exact_samples(rho, ic_effect_basis(r)));
        CHECK(frobenius_norm(rec.density.matrix() - rho.matrix()) <= 1e-8);
        CHECK_FALSE(rec.projected);
    }
}

TEST_CASE("random pure state round trip", "[reconstruction]") {
    Rng rng(3);
    const auto psi = random_state(3, rng);
    const auto rho = DensityOperator::pure(psi);
    const auto rec = reconstruct_density(exact_samples(rho, ic_effect_basis(3)));
    CHECK(frobenius_norm(rec.density.matrix() - rho.matrix()) <= 1e-8);
    CHECK(rec.max_residual < 1e-12);
}

TEST_CASE("random densities round trip", "[reconstruction]") {
    Rng rng(50);
    for (int i = 0; i < 50; ++i) {
        const std::size_t r = 2 + i % 4;
        const auto rho = random_density(r, rng, 1 + rng.next() % r);
        const auto rec = reconstruct_density(exact_samples(rho, ic_effect_basis(r)));
        CHECK(frobenius_norm(rec.density.matrix() - rho.matrix()) <= 1e-8);
    }
}

TEST_CASE("redundant effects are fine when consistent", "[reconstruction]") {
    Rng rng(9);
    const auto rho = random_density(3, rng);
    auto effects = ic_effect_basis(3);
    for (int k = 0; k < 5; ++k)
        effects.emplace_back(Projector::onto(random_state(3, rng)));
    effects.push_back(Effect(ComplexMatrix::diagonal({0.9, 0.2, 0.5})));
    const auto rec = reconstruct_density(exact_samples(rho, effects));
    CHECK(frobenius_norm(rec.density.matrix() - rho.matrix()) <= 1e-8);
}

TEST_CASE("too few effects", "[reconstruction]") {
    Rng rng(4);
    for (std::size_t r = 2; r <= 4; ++r) {
        const auto rho = random_density(r, rng);
        auto effects = ic_effect_basis(r);
        effects.pop_back();
        const auto samples = exact_samples(rho, effects);
        CHECK(failure_kind(samples) == ErrorKind::InsufficientSpan);
        CHECK(std::isinf(span_condition_number(effects)));
    }
    CHECK(failure_kind({}) == ErrorKind::InsufficientSpan);
}

TEST_CASE("inconsistent samples", "[reconstruction]") {
    const auto rho = DensityOperator::maximally_mixed(2);
    auto samples = exact_samples(rho, ic_effect_basis(2));
    // the same effect reported twice with different probabilities
    samples.push_back({samples[0].effect, 0.9});
    CHECK(failure_kind(samples) == ErrorKind::InconsistentSamples);

    // p(e1) + p(e2) must equal tr(rho) = 1
    auto bad = exact_samples(rho, ic_effect_basis(2));
    bad.push_back({Effect::identity(2), 0.6});
    CHECK(failure_kind(bad) == ErrorKind::InconsistentSamples);
}

TEST_CASE("non-positive fit is projected", "[reconstruction]") {
    // exact fit is [[1, 0.5], [0.5, 0]], eigenvalues (1 +- sqrt2) / 2
    const auto effects = ic_effect_basis(2);
    const std::vector<GPMSample> samples{{effects[0], 1.0}, {effects[1], 0.0}, {effects[2], 1.0}, {effects[3], 0.5}};
    const auto rec = reconstruct_density(samples);
    CHECK(rec.projected);
    CHECK_THAT(rec.min_eigenvalue, WithinAbs((1.0 - std::sqrt(2.0)) / 2.0, 1e-12));
    const auto ev = eigenvalues(rec.density.matrix());
    CHECK_THAT(ev[0], WithinAbs(0.0, 1e-12));
    CHECK_THAT(ev[1], WithinAbs(1.0, 1e-12));
    CHECK_THAT(rec.adjustment, WithinAbs(0.2071067811865475 * std::sqrt(2.0), 1e-12));
}

TEST_CASE("probabilities outside [0, 1] are rejected", "[reconstruction]") {
    const auto effects = ic_effect_basis(2);
    const std::vector<GPMSample> samples{{effects[0], 1.1}, {effects[1], 0.0}, {effects[2], 0.5}, {effects[3], 0.5}};
    CHECK(failure_kind(samples) == ErrorKind::InvariantViolation);
}
