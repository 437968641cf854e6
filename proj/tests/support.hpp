#pragma once

#include <cmath>
#include <numbers>

#include "qdt/qdt.hpp"

namespace test {

inline double deg(double d) { return d * std::numbers::pi / 180.0; }

inline qdt::StateVector real_unit(double angle_degrees) {
    return qdt::StateVector(qdt::ComplexVector{std::cos(deg(angle_degrees)), std::sin(deg(angle_degrees))});
}

// Random maximal variable: values 0..r-1 on the columns of a random unitary.
inline qdt::DecisionVariable random_variable(const std::string &name, std::size_t r, qdt::Rng &rng) {
    const auto u = qdt::random_unitary(r, rng);
    std::vector<double> values;
    std::vector<std::vector<qdt::StateVector>> basis;
    for (std::size_t j = 0; j < r; ++j) {
        values.push_back(static_cast<double>(j) - 0.5 * static_cast<double>(r) + 0.25 * rng.uniform());
        basis.push_back({qdt::StateVector::normalized(u.matrix().column(j))});
    }
    return qdt::variable_from_spectrum(name, values, basis);
}

} // namespace test
