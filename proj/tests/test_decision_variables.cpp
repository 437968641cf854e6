#include <catch_amalgamated.hpp>

#include "support.hpp"

using namespace qdt;
using Catch::Matchers::WithinAbs;

namespace {

DecisionVariable diagonal_variable(const std::string &name, std::vector<double> values) {
    const std::size_t r = values.size();
    std::vector<std::vector<StateVector>> basis;
    for (std::size_t j = 0; j < r; ++j)
        basis.push_back({StateVector::basis(r, j)});
    return variable_from_spectrum(name, std::move(values), basis);
}

DecisionVariable pauli_x_variable() {
    return variable_from_spectrum("X", {-1.0, 1.0},
                                  {{StateVector::normalized({1.0, -1.0})}, {StateVector::normalized({1.0, 1.0})}});
}

ErrorKind kind_of(auto &&fn) {
    try {
        fn();
    } catch (const Error &e) {
        return e.kind();
    }
    FAIL("expected an Error");
    return ErrorKind::InvariantViolation;
}

} // namespace

TEST_CASE("operator assembled from values and eigenvectors", "[variable]") {
    const auto v = diagonal_variable("A", {1.0, 2.0});
    CHECK(max_abs_difference(v.op().matrix(), ComplexMatrix::diagonal({1.0, 2.0})) < 1e-15);

    const auto x = pauli_x_variable();
    CHECK(max_abs_difference(x.op().matrix(), ComplexMatrix{{0.0, 1.0}, {1.0, 0.0}}) < 1e-15);

    const auto d = variable_from_spectrum("D", {0.0, 1.0},
                                          {{StateVector::basis(3, 0), StateVector::basis(3, 1)},
                                           {StateVector::basis(3, 2)}});
    CHECK(max_abs_difference(d.op().matrix(), ComplexMatrix::diagonal({0.0, 0.0, 1.0})) < 1e-15);
    CHECK(d.ranks() == std::vector<std::size_t>{2, 1});
}

TEST_CASE("values are sorted and matched", "[variable]") {
    const auto v = diagonal_variable("A", {3.0, 1.0, 2.0});
    CHECK(v.values() == std::vector<double>{1.0, 2.0, 3.0});
    CHECK(v.index_of(2.0) == 1);
    CHECK(v.index_of(3.0 + 1e-12) == 2);
    CHECK(kind_of([&] { (void)v.index_of(2.5); }) == ErrorKind::UnknownValue);
    // value 1 lives on e2
    CHECK_THAT(v.projector(1.0).matrix()(1, 1).real(), WithinAbs(1.0, 1e-15));
}

TEST_CASE("construction errors", "[variable]") {
    CHECK(kind_of([] { (void)diagonal_variable("A", {1.0, 1.0}); }) == ErrorKind::DuplicateValues);
    CHECK(kind_of([] {
              (void)variable_from_spectrum("A", {0.0, 1.0},
                                           {{test::real_unit(0.0)}, {test::real_unit(45.0)}});
          }) == ErrorKind::NonOrthonormalBasis);
    CHECK(kind_of([] {
              (void)variable_from_spectrum("A", {0.0, 1.0},
                                           {{StateVector::basis(3, 0)}, {StateVector::basis(3, 1)}});
          }) == ErrorKind::DimensionMismatch);
    CHECK(kind_of([] { (void)variable_from_spectrum("A", {0.0}, {{StateVector::basis(2, 0)}, {}}); }) ==
          ErrorKind::DimensionMismatch);
}

TEST_CASE("maximality", "[variable]") {
    CHECK(is_maximal(diagonal_variable("A", {1.0, 2.0, 3.0})));
    const auto d = DecisionVariable::from_operator("D", HermitianOperator(ComplexMatrix::diagonal({1.0, 1.0, 2.0})));
    CHECK_FALSE(is_maximal(d));
    CHECK(d.ranks() == std::vector<std::size_t>{2, 1});

    // a non-invertible function of a maximal variable is not maximal
    const auto t = diagonal_variable("t", {-1.0, 0.0, 1.0});
    CHECK_FALSE(is_maximal(apply_function(t, [](double u) { return u * u; })));
}

TEST_CASE("functions of a variable", "[variable]") {
    const auto t = diagonal_variable("t", {1.0, 2.0, 3.0});

    const auto same = apply_function(t, [](double u) { return u; });
    REQUIRE(same.size() == 3);
    for (std::size_t j = 0; j < 3; ++j) {
        CHECK(same.values()[j] == t.values()[j]);
        CHECK(max_abs_difference(same.projectors()[j].matrix(), t.projectors()[j].matrix()) < 1e-10);
    }

    const auto pm = diagonal_variable("s", {-1.0, 1.0});
    const auto sq = apply_function(pm, [](double u) { return u * u; });
    REQUIRE(sq.size() == 1);
    CHECK(sq.values()[0] == 1.0);
    CHECK(max_abs_difference(sq.projectors()[0].matrix(), ComplexMatrix::identity(2)) < 1e-15);

    const auto mod2 = apply_function(t, [](double u) { return std::fmod(u, 2.0); });
    CHECK(mod2.values() == std::vector<double>{0.0, 1.0});
    CHECK(mod2.ranks() == std::vector<std::size_t>{1, 2});
    CHECK(max_abs_difference(mod2.projectors()[1].matrix(), ComplexMatrix::diagonal({1.0, 0.0, 1.0})) < 1e-15);

    // values equal to 12 significant digits merge
    const auto near = apply_function(pm, [](double u) { return u < 0 ? 0.1 + 0.2 : 0.3; });
    CHECK(near.size() == 1);
}

TEST_CASE("conjugation by a unitary", "[variable]") {
    const auto z = diagonal_variable("Z", {-1.0, 1.0});
    const double h = 1.0 / std::sqrt(2.0);
    const UnitaryOperator hadamard(ComplexMatrix{{h, h}, {h, -h}});
    const auto x = conjugate(z, hadamard);
    // H diag(-1, 1) H = -sigma_x: the Pauli-X eigenbasis with the values swapped
    CHECK(max_abs_difference(x.op().matrix(), ComplexMatrix{{0.0, -1.0}, {-1.0, 0.0}}) < 1e-15);
    CHECK(is_one_to_one_related(x, pauli_x_variable()));
    CHECK(are_complementary(x, z));

    const auto same = conjugate(z, UnitaryOperator(ComplexMatrix::identity(2)));
    CHECK(is_one_to_one_related(z, same));

    Rng rng(6);
    const auto a = DecisionVariable::from_operator("A", random_hermitian(6, rng));
    const auto w = random_unitary(6, rng);
    const auto ev_before = eigenvalues(a.op().matrix());
    const auto ev_after = eigenvalues(conjugate(a, w).op().matrix());
    for (std::size_t i = 0; i < 6; ++i)
        CHECK_THAT(ev_after[i], WithinAbs(ev_before[i], 1e-10));
}

TEST_CASE("maximality survives random conjugation", "[variable]") {
    Rng rng(100);
    for (int i = 0; i < 100; ++i) {
        const std::size_t r = 2 + i % 5;
        const auto v = test::random_variable("v", r, rng);
        const auto w = random_unitary(r, rng);
        const auto c = conjugate(v, w);
        CHECK(is_maximal(c));
        CHECK(c.values() == v.values());
    }
}

TEST_CASE("one-to-one relations and complementarity", "[variable]") {
    const auto z = diagonal_variable("Z", {-1.0, 1.0});
    const auto x = pauli_x_variable();
    CHECK(is_one_to_one_related(z, apply_function(z, [](double u) { return 3.0 * u + 7.0; })));
    CHECK_FALSE(is_one_to_one_related(z, x));
    CHECK(are_complementary(z, x));
    CHECK_FALSE(are_complementary(z, apply_function(z, [](double u) { return std::exp(u); })));

    const auto t = diagonal_variable("t", {1.0, 2.0, 3.0});
    const auto coarse = apply_function(t, [](double u) { return u > 1.5 ? 1.0 : 0.0; });
    CHECK_FALSE(is_one_to_one_related(t, coarse));
    CHECK_FALSE(are_complementary(t, coarse));
}

TEST_CASE("complementary qubit bases have overlap 1/2", "[variable]") {
    const auto z = diagonal_variable("Z", {-1.0, 1.0});
    const auto x = pauli_x_variable();
    for (const auto &pz : z.projectors())
        for (const auto &px : x.projectors())
            CHECK_THAT(trace_of_product(pz.matrix(), px.matrix()).real(), WithinAbs(0.5, 1e-15));
}

TEST_CASE("angle shorthand", "[variable]") {
    const auto a = variable_from_angle("A", 1.0, 0.0, 40.0);
    CHECK(a.values() == std::vector<double>{0.0, 1.0});
    const auto &p1 = a.projector(1.0).matrix();
    CHECK_THAT(p1(0, 0).real(), WithinAbs(std::pow(std::cos(test::deg(40.0)), 2), 1e-15));
    CHECK_THAT(p1(1, 1).real(), WithinAbs(std::pow(std::sin(test::deg(40.0)), 2), 1e-15));
    CHECK(is_maximal(a));
}

TEST_CASE("rounding to twelve significant digits", "[variable]") {
    CHECK(round_significant12(0.1 + 0.2) == round_significant12(0.3));
    CHECK(round_significant12(1.0 / 3.0) == 0.333333333333);
    CHECK(round_significant12(0.0) == 0.0);
}
