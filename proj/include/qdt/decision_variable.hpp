#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <concepts>
#include <cstddef>
#include <map>
#include <numbers>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "operators.hpp"
#include "spectral.hpp"

namespace qdt {

/// Round to 12 significant digits. Function values that agree after rounding
/// are treated as the same value of the derived variable.
inline double round_significant12(double x) {
    if (x == 0.0 || !std::isfinite(x))
        return x;
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::scientific, 11);
    double y = 0.0;
    std::from_chars(buf, res.ptr, y, std::chars_format::scientific);
    return y;
}

/// An accessible decision variable: a finite list of strictly increasing
/// values u_j with mutually orthogonal eigenprojectors resolving the identity,
/// and the operator A = sum_j u_j P_j.
class DecisionVariable {
  public:
    /// Assemble from values paired with eigenprojectors. The pairs may come in
    /// any order; they are sorted by value.
    static DecisionVariable from_projectors(std::string name, std::vector<double> values, std::vector<Projector> projectors,
                                            const Tolerances &tol = default_tolerances()) {
        if (values.empty())
            throw Error(ErrorKind::DimensionMismatch, "variable '" + name + "' has no values");
        if (values.size() != projectors.size())
            throw Error(ErrorKind::DimensionMismatch, "variable '" + name + "': " + std::to_string(values.size()) +
                                                          " values but " + std::to_string(projectors.size()) +
                                                          " eigenspaces");
        for (double u : values)
            if (!std::isfinite(u))
                throw Error(ErrorKind::InvariantViolation, "variable '" + name + "' has a non-finite value");

        std::vector<std::size_t> order(values.size());
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::sort(order.begin(), order.end(), [&](auto i, auto j) { return values[i] < values[j]; });
        for (std::size_t k = 1; k < order.size(); ++k)
            if (values[order[k]] == values[order[k - 1]])
                throw Error(ErrorKind::DuplicateValues,
                            "variable '" + name + "' repeats value " + std::to_string(values[order[k]]));

        DecisionVariable v;
        v.name_ = std::move(name);
        const std::size_t r = projectors.front().dim();
        for (auto i : order) {
            require_same_dim(projectors[i].dim(), r, "eigenprojector dimension");
            v.values_.push_back(values[i]);
            v.projectors_.push_back(projectors[i]);
        }

        ComplexMatrix sum(r, r);
        ComplexMatrix a(r, r);
        for (std::size_t j = 0; j < v.values_.size(); ++j) {
            const auto &pj = v.projectors_[j].matrix();
            sum += pj;
            a += v.values_[j] * pj;
            for (std::size_t k = j + 1; k < v.values_.size(); ++k)
                if (frobenius_norm(pj * v.projectors_[k].matrix()) > tol.orthonormality)
                    throw Error(ErrorKind::NonOrthonormalBasis, "variable '" + v.name_ + "': eigenspaces of values " +
                                                                    std::to_string(v.values_[j]) + " and " +
                                                                    std::to_string(v.values_[k]) + " overlap");
        }
        if (frobenius_norm(sum - ComplexMatrix::identity(r)) > tol.orthonormality)
            throw Error(ErrorKind::NotAPartition, "variable '" + v.name_ + "': eigenprojectors do not sum to I");
        v.operator_ = HermitianOperator(a, tol);
        return v;
    }

    /// Spectral data of the operator of `a`, grouped by the degeneracy rule.
    static DecisionVariable from_operator(std::string name, const HermitianOperator &a,
                                          const Tolerances &tol = default_tolerances()) {
        const auto sd = a.eig(tol);
        std::vector<double> values;
        std::vector<Projector> projectors;
        for (std::size_t g = 0; g < sd.groups.size(); ++g) {
            values.push_back(sd.group_value(g));
            projectors.emplace_back(sd.group_projector(g), tol);
        }
        return from_projectors(std::move(name), std::move(values), std::move(projectors), tol);
    }

    [[nodiscard]] const std::string &name() const noexcept { return name_; }
    [[nodiscard]] const std::vector<double> &values() const noexcept { return values_; }
    [[nodiscard]] const std::vector<Projector> &projectors() const noexcept { return projectors_; }
    [[nodiscard]] const HermitianOperator &op() const noexcept { return operator_; }
    [[nodiscard]] std::size_t dim() const noexcept { return operator_.dim(); }
    [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }

    [[nodiscard]] std::vector<std::size_t> ranks() const {
        std::vector<std::size_t> r;
        for (const auto &p : projectors_)
            r.push_back(p.rank());
        return r;
    }

    /// Index of `value`, matched with a relative tolerance. Throws UnknownValue.
    [[nodiscard]] std::size_t index_of(double value, const Tolerances &tol = default_tolerances()) const {
        for (std::size_t j = 0; j < values_.size(); ++j)
            if (std::abs(values_[j] - value) <= tol.value_match * std::max(1.0, std::abs(values_[j])))
                return j;
        throw Error(ErrorKind::UnknownValue, "variable '" + name_ + "' has no value " + std::to_string(value));
    }

    [[nodiscard]] const Projector &projector(double value, const Tolerances &tol = default_tolerances()) const {
        return projectors_[index_of(value, tol)];
    }

    DecisionVariable renamed(std::string name) const {
        DecisionVariable v = *this;
        v.name_ = std::move(name);
        return v;
    }

  private:
    DecisionVariable() : operator_(ComplexMatrix::identity(1)) {}

    std::string name_;
    std::vector<double> values_;
    std::vector<Projector> projectors_;
    HermitianOperator operator_;
};

/// Build a variable from values and one group of orthonormal eigenvectors per
/// value. The groups together must form an orthonormal basis of C^r.
inline DecisionVariable variable_from_spectrum(std::string name, std::vector<double> values,
                                               const std::vector<std::vector<StateVector>> &eigenbasis,
                                               const Tolerances &tol = default_tolerances()) {
    if (values.size() != eigenbasis.size())
        throw Error(ErrorKind::DimensionMismatch, "variable '" + name + "': " + std::to_string(values.size()) +
                                                      " values but " + std::to_string(eigenbasis.size()) +
                                                      " eigenvector groups");
    if (eigenbasis.empty())
        throw Error(ErrorKind::DimensionMismatch, "variable '" + name + "' has no values");
    std::vector<const StateVector *> all;
    for (const auto &group : eigenbasis) {
        if (group.empty())
            throw Error(ErrorKind::DimensionMismatch, "variable '" + name + "': empty eigenvector group");
        for (const auto &v : group)
            all.push_back(&v);
    }
    const std::size_t r = all.front()->dim();
    for (const auto *v : all)
        require_same_dim(v->dim(), r, "eigenvector dimension");
    if (all.size() != r)
        throw Error(ErrorKind::DimensionMismatch, "variable '" + name + "': " + std::to_string(all.size()) +
                                                      " eigenvectors for dimension " + std::to_string(r));
    {
        std::vector<double> sorted = values;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw Error(ErrorKind::DuplicateValues, "variable '" + name + "' has repeated values");
    }
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = i; j < r; ++j) {
            const Complex g = inner(all[i]->amplitudes(), all[j]->amplitudes());
            if (std::abs(g - Complex(i == j ? 1.0 : 0.0)) > tol.orthonormality)
                throw Error(ErrorKind::NonOrthonormalBasis, "variable '" + name + "': eigenvectors " +
                                                                std::to_string(i) + " and " + std::to_string(j) +
                                                                " are not orthonormal");
        }

    std::vector<Projector> projectors;
    for (const auto &group : eigenbasis) {
        ComplexMatrix p(r, r);
        for (const auto &v : group)
            p += ComplexMatrix::outer(v.amplitudes(), v.amplitudes());
        projectors.emplace_back(p, tol);
    }
    return DecisionVariable::from_projectors(std::move(name), std::move(values), std::move(projectors), tol);
}

/// Maximal iff every eigenvalue is simple.
inline bool is_maximal(const DecisionVariable &v) {
    return std::all_of(v.projectors().begin(), v.projectors().end(), [](const Projector &p) { return p.rank() == 1; });
}

/// The variable f(theta): values f(u_j), with eigenprojectors of coinciding
/// values (after 12-digit rounding) merged.
template <std::invocable<double> F>
DecisionVariable apply_function(const DecisionVariable &v, F &&f, std::string name = {},
                                const Tolerances &tol = default_tolerances()) {
    std::map<double, std::pair<double, ComplexMatrix>> merged;
    for (std::size_t j = 0; j < v.size(); ++j) {
        const double fu = static_cast<double>(f(v.values()[j]));
        const double key = round_significant12(fu);
        auto it = merged.find(key);
        if (it == merged.end())
            merged.emplace(key, std::make_pair(fu, v.projectors()[j].matrix()));
        else
            it->second.second += v.projectors()[j].matrix();
    }
    std::vector<double> values;
    std::vector<Projector> projectors;
    for (auto &[key, entry] : merged) {
        values.push_back(entry.first);
        projectors.emplace_back(entry.second, tol);
    }
    if (name.empty())
        name = "f(" + v.name() + ")";
    return DecisionVariable::from_projectors(std::move(name), std::move(values), std::move(projectors), tol);
}

/// The related variable with operator W^-1 A W.
inline DecisionVariable conjugate(const DecisionVariable &v, const UnitaryOperator &w, std::string name = {},
                                  const Tolerances &tol = default_tolerances()) {
    require_same_dim(v.dim(), w.dim(), "conjugate");
    const ComplexMatrix winv = w.inverse();
    std::vector<Projector> projectors;
    for (const auto &p : v.projectors())
        projectors.emplace_back(winv * p.matrix() * w.matrix(), tol);
    if (name.empty())
        name = v.name();
    return DecisionVariable::from_projectors(std::move(name), v.values(), std::move(projectors), tol);
}

/// True iff the eigenprojector lists agree up to a pairing, i.e. each variable
/// is an invertible function of the other.
inline bool is_one_to_one_related(const DecisionVariable &a, const DecisionVariable &b,
                                  const Tolerances &tol = default_tolerances()) {
    require_same_dim(a.dim(), b.dim(), "is_one_to_one_related");
    if (a.size() != b.size())
        return false;
    std::vector<bool> used(b.size(), false);
    for (const auto &p : a.projectors()) {
        bool matched = false;
        for (std::size_t k = 0; k < b.size() && !matched; ++k)
            if (!used[k] && frobenius_norm(p.matrix() - b.projectors()[k].matrix()) <= tol.projector_match) {
                used[k] = true;
                matched = true;
            }
        if (!matched)
            return false;
    }
    return true;
}

/// Both maximal and not in one-to-one correspondence.
inline bool are_complementary(const DecisionVariable &a, const DecisionVariable &b,
                              const Tolerances &tol = default_tolerances()) {
    return is_maximal(a) && is_maximal(b) && !is_one_to_one_related(a, b, tol);
}

/// Rank-1 eigenbasis of a qubit-like real plane: value[0] on
/// (cos t, sin t), value[1] on (-sin t, cos t). Dimension 2.
inline DecisionVariable variable_from_angle(std::string name, double value_at_angle, double value_at_perp,
                                            double angle_degrees) {
    const double t = angle_degrees * std::numbers::pi / 180.0;
    const StateVector e0(ComplexVector{std::cos(t), std::sin(t)});
    const StateVector e1(ComplexVector{-std::sin(t), std::cos(t)});
    return variable_from_spectrum(std::move(name), {value_at_angle, value_at_perp}, {{e0}, {e1}});
}

} // namespace qdt
