#include <catch_amalgamated.hpp>

#include "support.hpp"

using namespace qdt;
using Catch::Matchers::WithinAbs;

namespace {

double max_entry(const ComplexMatrix &m) {
    double x = 0.0;
    for (const auto &z : m.data())
        x = std::max(x, std::abs(z));
    return x;
}

ComplexMatrix pauli_x() { return ComplexMatrix{{0.0, 1.0}, {1.0, 0.0}}; }
ComplexMatrix pauli_y() { return ComplexMatrix{{0.0, -I_unit}, {I_unit, 0.0}}; }

} // namespace

TEST_CASE("adjoint conjugates and transposes", "[matrix]") {
    const ComplexMatrix m{{1.0, Complex(2, 3)}, {Complex(0, -1), 4.0}, {5.0, Complex(6, 7)}};
    const auto a = adjoint(m);
    REQUIRE(a.rows() == 2);
    REQUIRE(a.cols() == 3);
    CHECK(a(1, 0) == Complex(2, -3));
    CHECK(a(0, 1) == Complex(0, 1));
    CHECK(adjoint(a) == m);
}

TEST_CASE("shape errors", "[matrix]") {
    const ComplexMatrix a(2, 3), b(2, 3);
    CHECK_THROWS_AS(a * b, Error);
    CHECK_THROWS_AS(trace(a), Error);
    CHECK_THROWS_AS(ComplexMatrix({{1.0, 2.0}, {3.0}}), Error);
    try {
        (void)matvec(a, ComplexVector(2));
        FAIL("no throw");
    } catch (const Error &e) {
        CHECK(e.kind() == ErrorKind::DimensionMismatch);
    }
}

TEST_CASE("trace of product is cyclic", "[matrix]") {
    Rng rng(11);
    for (std::size_t r : {2u, 3u, 6u}) {
        const auto a = random_hermitian(r, rng).matrix();
        const auto b = random_unitary(r, rng).matrix();
        const auto c = random_hermitian(r, rng).matrix();
        CHECK(std::abs(trace(a * b * c) - trace(c * a * b)) < 1e-12);
        CHECK(std::abs(trace_of_product(a, b) - trace(a * b)) < 1e-12);
    }
}

TEST_CASE("tensor products", "[matrix]") {
    Rng rng(5);
    const auto a = random_hermitian(2, rng).matrix();
    const auto b = random_hermitian(3, rng).matrix();
    const auto c = random_hermitian(2, rng).matrix();
    const auto d = random_hermitian(3, rng).matrix();
    // mixed product rule
    CHECK(max_abs_difference(tensor_product(a, b) * tensor_product(c, d), tensor_product(a * c, b * d)) < 1e-12);
    CHECK(std::abs(trace(tensor_product(a, b)) - trace(a) * trace(b)) < 1e-12);

    const auto u = random_state(2, rng);
    const auto v = random_state(3, rng);
    const auto uv = tensor_product(std::span<const Complex>(u.amplitudes()), std::span<const Complex>(v.amplitudes()));
    CHECK_THAT(norm(uv), WithinAbs(1.0, 1e-14));
    CHECK(std::abs(uv[4] - u[1] * v[1]) < 1e-15);
}

TEST_CASE("state vectors", "[operators]") {
    CHECK_NOTHROW(StateVector(ComplexVector{0.6, Complex(0, 0.8)}));
    CHECK_THROWS_AS(StateVector(ComplexVector{0.6, 0.6}), Error);
    CHECK_THROWS_AS(StateVector(ComplexVector{}), Error);
    CHECK_THROWS_AS(StateVector::normalized(ComplexVector(3)), Error);
    const auto s = StateVector::normalized({3.0, 4.0});
    CHECK_THAT(s[0].real(), WithinAbs(0.6, 1e-15));
}

TEST_CASE("non-Hermitian input is rejected", "[operators]") {
    const ComplexMatrix m{{1.0, 2.0}, {0.0, 1.0}};
    try {
        HermitianOperator h(m);
        FAIL("accepted");
    } catch (const Error &e) {
        CHECK(e.kind() == ErrorKind::NotHermitian);
    }
    CHECK_THROWS_AS(hermitian_eig(m), Error);
    CHECK_THROWS_AS(Projector(ComplexMatrix::diagonal({0.5, 0.5})), Error);
    CHECK_THROWS_AS(Effect(ComplexMatrix::diagonal({1.5, 0.0})), Error);
    CHECK_THROWS_AS(DensityOperator(ComplexMatrix::diagonal({1.2, -0.2})), Error);
    CHECK_THROWS_AS(UnitaryOperator(ComplexMatrix::diagonal({1.0, 2.0})), Error);
}

TEST_CASE("eigendecomposition of a diagonal matrix", "[eigen]") {
    const auto sd = hermitian_eig(ComplexMatrix::diagonal({3.0, -1.0, 2.0}));
    REQUIRE(sd.eigenvalues.size() == 3);
    CHECK(sd.eigenvalues[0] == -1.0);
    CHECK(sd.eigenvalues[1] == 2.0);
    CHECK(sd.eigenvalues[2] == 3.0);
    CHECK(sd.simple_spectrum());
    CHECK(std::abs(sd.vector(0)[1] - 1.0) < 1e-15);
}

TEST_CASE("Pauli matrices", "[eigen]") {
    for (const auto &m : {pauli_x(), pauli_y()}) {
        const auto sd = hermitian_eig(m);
        CHECK_THAT(sd.eigenvalues[0], WithinAbs(-1.0, 1e-14));
        CHECK_THAT(sd.eigenvalues[1], WithinAbs(1.0, 1e-14));
        CHECK(max_abs_difference(sd.reconstruct(), m) < 1e-14);
        // phase convention: first non-negligible component real and positive
        for (std::size_t i = 0; i < 2; ++i) {
            const auto v = sd.vector(i);
            CHECK(v[0].real() > 0.0);
            CHECK(std::abs(v[0].imag()) < 1e-15);
        }
    }
}

TEST_CASE("degenerate spectra are grouped", "[eigen]") {
    Rng rng(3);
    const auto u = random_unitary(4, rng).matrix();
    const auto a = u * ComplexMatrix::diagonal({1.0, 1.0, 1.0, -2.0}) * adjoint(u);
    const auto sd = hermitian_eig(a);
    REQUIRE(sd.groups.size() == 2);
    CHECK(sd.groups[0].size() == 1);
    CHECK(sd.groups[1].size() == 3);
    const auto p = sd.group_projector(1);
    CHECK(frobenius_norm(p * p - p) < 1e-12);
    CHECK_THAT(trace(p).real(), WithinAbs(3.0, 1e-12));
}

TEST_CASE("random Hermitian matrices up to r = 16", "[eigen]") {
    Rng rng(2024);
    for (int draw = 0; draw < 200; ++draw) {
        const std::size_t r = 1 + rng.next() % 16;
        const auto a = random_hermitian(r, rng).matrix();
        const auto sd = hermitian_eig(a);
        const double scale = std::max(1.0, max_entry(a));

        CHECK(std::is_sorted(sd.eigenvalues.begin(), sd.eigenvalues.end()));
        const auto &v = sd.eigenvectors;
        CHECK(frobenius_norm(adjoint(v) * v - ComplexMatrix::identity(r)) < 1e-12);
        CHECK(max_abs_difference(sd.reconstruct(), a) < 1e-11 * scale);
        for (std::size_t i = 0; i < r; ++i) {
            const auto x = sd.vector(i);
            auto ax = matvec(a, x);
            for (std::size_t k = 0; k < r; ++k)
                ax[k] -= sd.eigenvalues[i] * x[k];
            CHECK(norm(ax) < 1e-11 * scale);
        }

        ComplexMatrix sum(r, r);
        for (std::size_t g = 0; g < sd.groups.size(); ++g)
            sum += sd.group_projector(g);
        CHECK(frobenius_norm(sum - ComplexMatrix::identity(r)) < 1e-12);
    }
}

TEST_CASE("spectral functions", "[spectral]") {
    Rng rng(17);
    const auto h = random_hermitian(4, rng);

    const auto id = spectral_function(h, [](double x) { return x; });
    CHECK(max_abs_difference(id.matrix(), h.matrix()) < 1e-12);

    const auto sq = spectral_function(h, [](double x) { return x * x; });
    CHECK(max_abs_difference(sq.matrix(), h.matrix() * h.matrix()) < 1e-11);

    const auto rho = random_density(3, rng);
    const auto root = spectral_function(rho, [](double x) { return std::sqrt(std::max(0.0, x)); });
    CHECK(max_abs_difference(root.matrix() * root.matrix(), rho.matrix()) < 1e-12);

    // indicator of positive eigenvalues is the positive spectral projector
    const auto pos = spectral_function(h, [](double x) { return x > 0.0 ? 1.0 : 0.0; });
    CHECK(frobenius_norm(pos.matrix() * pos.matrix() - pos.matrix()) < 1e-12);

    // (g o f)(A) = g(f(A))
    auto f = [](double x) { return std::exp(0.3 * x); };
    auto g = [](double y) { return 2.0 * y - 1.0; };
    const auto lhs = spectral_function(h, [&](double x) { return g(f(x)); });
    const auto rhs = spectral_function(spectral_function(h, f), g);
    CHECK(max_abs_difference(lhs.matrix(), rhs.matrix()) < 1e-11);
}

TEST_CASE("projector onto a span", "[spectral]") {
    const auto p = projector_onto_span(std::vector<StateVector>{test::real_unit(40.0)});
    CHECK(p.rank() == 1);
    CHECK_THAT(p.matrix()(0, 0).real(), WithinAbs(0.766044443119 * 0.766044443119, 1e-12));
    CHECK_THAT(p.matrix()(0, 1).real(), WithinAbs(0.766044443119 * 0.642787609687, 1e-12));

    const std::vector<StateVector> plane{StateVector::basis(3, 0),
                                         StateVector::normalized({1.0, 1.0, 0.0})};
    const auto q = projector_onto_span(plane);
    CHECK(q.rank() == 2);
    CHECK(max_abs_difference(q.matrix(), ComplexMatrix::diagonal({1.0, 1.0, 0.0})) < 1e-14);

    try {
        (void)projector_onto_span(std::vector<StateVector>{test::real_unit(10.0), test::real_unit(10.0)});
        FAIL("dependent vectors accepted");
    } catch (const Error &e) {
        CHECK(e.kind() == ErrorKind::DegenerateSpan);
    }
}

TEST_CASE("eigenprojectors resolve the identity", "[spectral]") {
    Rng rng(99);
    for (std::size_t r = 2; r <= 8; ++r) {
        const auto v = DecisionVariable::from_operator("A", random_hermitian(r, rng));
        ComplexMatrix sum(r, r);
        for (const auto &p : v.projectors())
            sum += p.matrix();
        CHECK(frobenius_norm(sum - ComplexMatrix::identity(r)) < 1e-12);
    }
}

TEST_CASE("small worked cases", "[matrix][spectral]") {
    const ComplexMatrix n{{0.0, I_unit}, {0.0, 0.0}};
    const ComplexMatrix na{{0.0, 0.0}, {-I_unit, 0.0}};
    CHECK(adjoint(n) == na);
    CHECK(trace(ComplexMatrix::identity(5)) == Complex(5.0));
    CHECK_THAT(trace_of_product(DensityOperator::maximally_mixed(2).matrix(),
                                Projector::onto(test::real_unit(40.0)).matrix())
                   .real(),
               WithinAbs(0.5, 1e-15));

    const auto root = spectral_function(HermitianOperator(ComplexMatrix::diagonal({1.0, 4.0})),
                                        [](double x) { return std::sqrt(x); });
    CHECK(max_abs_difference(root.matrix(), ComplexMatrix::diagonal({1.0, 2.0})) < 1e-14);

    CHECK(tensor_product(ComplexMatrix::identity(2), ComplexMatrix::identity(2)) == ComplexMatrix::identity(4));
    CHECK(tensor_product(ComplexMatrix::diagonal({1.0, 0.0}), ComplexMatrix::diagonal({1.0, 0.0})) ==
          ComplexMatrix::diagonal({1.0, 0.0, 0.0, 0.0}));
}

TEST_CASE("indicator of an eigenvalue gives its eigenprojector", "[spectral]") {
    Rng rng(8);
    const auto h = random_hermitian(3, rng);
    const auto sd = h.eig();
    for (std::size_t j = 0; j < 3; ++j) {
        const double u = sd.eigenvalues[j];
        const auto ind = spectral_function(h, [&](double x) { return std::abs(x - u) < 1e-9 ? 1.0 : 0.0; });
        const auto v = sd.vector(j);
        CHECK(max_abs_difference(ind.matrix(), ComplexMatrix::outer(v, v)) < 1e-12);
    }
}

TEST_CASE("product states factorize joint probabilities", "[matrix]") {
    Rng rng(21);
    const auto psi_a = random_state(2, rng);
    const auto psi_b = random_state(3, rng);
    const auto pa = Projector::onto(random_state(2, rng));
    const auto pb = Projector::onto(random_state(3, rng));
    const StateVector joint(tensor_product(std::span<const Complex>(psi_a.amplitudes()),
                                           std::span<const Complex>(psi_b.amplitudes())));
    const Projector pa_i(tensor_product(pa.matrix(), ComplexMatrix::identity(3)));
    const Projector i_pb(tensor_product(ComplexMatrix::identity(2), pb.matrix()));
    const Projector both(pa_i.matrix() * i_pb.matrix());
    CHECK_THAT(event_probability(joint, both), WithinAbs(event_probability(psi_a, pa) * event_probability(psi_b, pb), 1e-12));
    CHECK_THAT(event_probability(joint, pa_i), WithinAbs(event_probability(psi_a, pa), 1e-12));
}
