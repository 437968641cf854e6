#pragma once

#include <cmath>
#include <concepts>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "decision_variable.hpp"
#include "errors.hpp"
#include "operators.hpp"
#include "spectral.hpp"

namespace qdt {

/// A pure state or a density operator.
using State = std::variant<StateVector, DensityOperator>;

inline std::size_t state_dim(const State &s) {
    return std::visit([](const auto &x) { return x.dim(); }, s);
}

inline DensityOperator as_density(const State &s) {
    if (const auto *psi = std::get_if<StateVector>(&s))
        return DensityOperator::pure(*psi);
    return std::get<DensityOperator>(s);
}

/// |<from|to>|^2
inline double transition_probability(const StateVector &from, const StateVector &to) {
    require_same_dim(from.dim(), to.dim(), "transition_probability");
    return std::norm(inner(from.amplitudes(), to.amplitudes()));
}

/// ||P psi||^2
inline double event_probability(const StateVector &psi, const Projector &p) {
    require_same_dim(psi.dim(), p.dim(), "event probability");
    return norm_squared(matvec(p.matrix(), psi.amplitudes()));
}

/// tr(rho P)
inline double event_probability(const DensityOperator &rho, const Projector &p) {
    require_same_dim(rho.dim(), p.dim(), "event probability");
    return trace_of_product(rho.matrix(), p.matrix()).real();
}

struct OutcomeDistribution {
    std::vector<double> values;
    std::vector<double> probabilities;

    [[nodiscard]] double total() const {
        double s = 0.0;
        for (double p : probabilities)
            s += p;
        return s;
    }

    [[nodiscard]] double mean() const {
        double s = 0.0;
        for (std::size_t j = 0; j < values.size(); ++j)
            s += values[j] * probabilities[j];
        return s;
    }
};

template <typename S>
    requires std::same_as<S, StateVector> || std::same_as<S, DensityOperator>
OutcomeDistribution outcome_distribution(const S &state, const DecisionVariable &v) {
    require_same_dim(state.dim(), v.dim(), "outcome_distribution");
    OutcomeDistribution d;
    d.values = v.values();
    for (const auto &p : v.projectors())
        d.probabilities.push_back(event_probability(state, p));
    return d;
}

inline OutcomeDistribution outcome_distribution(const State &s, const DecisionVariable &v) {
    return std::visit([&](const auto &x) { return outcome_distribution(x, v); }, s);
}

/// Lueders update P psi / ||P psi||. Conditioning on an event whose
/// probability is at most the zero-probability tolerance is an error.
inline StateVector collapse(const StateVector &psi, const Projector &p, const Tolerances &tol = default_tolerances()) {
    require_same_dim(psi.dim(), p.dim(), "collapse");
    auto projected = matvec(p.matrix(), psi.amplitudes());
    const double prob = norm_squared(projected);
    if (!(prob > tol.zero_probability))
        throw Error(ErrorKind::ZeroProbabilityOutcome,
                    "cannot condition on an outcome of probability " + std::to_string(prob));
    return StateVector::normalized(std::move(projected));
}

inline StateVector collapse(const StateVector &psi, const DecisionVariable &v, double value,
                            const Tolerances &tol = default_tolerances()) {
    require_same_dim(psi.dim(), v.dim(), "collapse");
    return collapse(psi, v.projector(value, tol), tol);
}

/// ||P_n ... P_1 psi||^2 for events applied first to last. Zero is a valid
/// result; no conditioning takes place.
inline double sequential_probability(const StateVector &psi, std::span<const Projector> events) {
    ComplexVector amp = psi.amplitudes();
    for (const auto &p : events) {
        require_same_dim(psi.dim(), p.dim(), "sequential_probability");
        amp = matvec(p.matrix(), amp);
    }
    return norm_squared(amp);
}

struct MeasurementStep {
    const DecisionVariable *variable;
    double value;
};

inline double sequential_probability(const StateVector &psi, std::span<const MeasurementStep> steps,
                                     const Tolerances &tol = default_tolerances()) {
    std::vector<Projector> events;
    events.reserve(steps.size());
    for (const auto &step : steps) {
        require_same_dim(psi.dim(), step.variable->dim(), "sequential_probability");
        events.push_back(step.variable->projector(step.value, tol));
    }
    return sequential_probability(psi, std::span<const Projector>(events));
}

/// <psi|A|psi>
inline double expectation(const StateVector &psi, const DecisionVariable &v) {
    require_same_dim(psi.dim(), v.dim(), "expectation");
    return inner(psi.amplitudes(), matvec(v.op().matrix(), psi.amplitudes())).real();
}

/// tr(rho A)
inline double expectation(const DensityOperator &rho, const DecisionVariable &v) {
    require_same_dim(rho.dim(), v.dim(), "expectation");
    return trace_of_product(rho.matrix(), v.op().matrix()).real();
}

inline double expectation(const State &s, const DecisionVariable &v) {
    return std::visit([&](const auto &x) { return expectation(x, v); }, s);
}

/// tr(rho f(A)), with f(A) built from the variable's own spectral resolution.
template <std::invocable<double> F>
double expectation_of_function(const DensityOperator &rho, const DecisionVariable &v, F &&f) {
    require_same_dim(rho.dim(), v.dim(), "expectation_of_function");
    ComplexMatrix fa(v.dim(), v.dim());
    for (std::size_t j = 0; j < v.size(); ++j)
        fa += static_cast<double>(f(v.values()[j])) * v.projectors()[j].matrix();
    return trace_of_product(rho.matrix(), fa).real();
}

/// p(z | theta = u_j) for every data label z and value index j.
class LikelihoodTable {
  public:
    LikelihoodTable(DecisionVariable variable, std::vector<std::string> labels,
                    std::vector<std::vector<double>> entries, const Tolerances &tol = default_tolerances())
        : variable_(std::move(variable)), labels_(std::move(labels)), entries_(std::move(entries)) {
        if (labels_.size() != entries_.size())
            throw Error(ErrorKind::DimensionMismatch, "likelihood table needs one row per data label");
        for (std::size_t z = 0; z < entries_.size(); ++z) {
            if (entries_[z].size() != variable_.size())
                throw Error(ErrorKind::DimensionMismatch,
                            "likelihood row '" + labels_[z] + "' needs one entry per value of '" + variable_.name() + "'");
            for (double p : entries_[z])
                if (!(p >= 0.0 && p <= 1.0))
                    throw Error(ErrorKind::InvariantViolation,
                                "likelihood row '" + labels_[z] + "' has an entry outside [0, 1]");
            for (std::size_t k = 0; k < z; ++k)
                if (labels_[k] == labels_[z])
                    throw Error(ErrorKind::InvariantViolation, "duplicate data label '" + labels_[z] + "'");
        }
        for (std::size_t j = 0; j < variable_.size(); ++j) {
            double s = 0.0;
            for (const auto &row : entries_)
                s += row[j];
            if (std::abs(s - 1.0) > tol.unit_norm)
                throw Error(ErrorKind::InvariantViolation,
                            "likelihoods for value " + std::to_string(variable_.values()[j]) + " sum to " +
                                std::to_string(s));
        }
    }

    [[nodiscard]] const DecisionVariable &variable() const noexcept { return variable_; }
    [[nodiscard]] const std::vector<std::string> &labels() const noexcept { return labels_; }

    [[nodiscard]] std::size_t label_index(const std::string &z) const {
        for (std::size_t k = 0; k < labels_.size(); ++k)
            if (labels_[k] == z)
                return k;
        throw Error(ErrorKind::UnknownDataLabel, "no data label '" + z + "'");
    }

    [[nodiscard]] double likelihood(const std::string &z, std::size_t value_index) const {
        return entries_[label_index(z)].at(value_index);
    }

    [[nodiscard]] const std::vector<double> &row(const std::string &z) const { return entries_[label_index(z)]; }

  private:
    DecisionVariable variable_;
    std::vector<std::string> labels_;
    std::vector<std::vector<double>> entries_;
};

/// F(z) = sum_j p(z | u_j) P_j. Degenerate values contribute their whole
/// eigenspace projector.
inline Effect likelihood_effect(const LikelihoodTable &table, const std::string &z,
                                const Tolerances &tol = default_tolerances()) {
    const auto &row = table.row(z);
    const auto &v = table.variable();
    ComplexMatrix f(v.dim(), v.dim());
    for (std::size_t j = 0; j < v.size(); ++j)
        f += row[j] * v.projectors()[j].matrix();
    return Effect(f, tol);
}

/// mu(F) = tr(rho F)
inline double gpm_evaluate(const DensityOperator &rho, const Effect &f) {
    require_same_dim(rho.dim(), f.dim(), "gpm_evaluate");
    return trace_of_product(rho.matrix(), f.matrix()).real();
}

/// Informationally complete set of r^2 rank-1 projectors: onto e_j, onto
/// (e_j + e_k)/sqrt2 and onto (e_j + i e_k)/sqrt2 for j < k.
inline std::vector<Effect> ic_effect_basis(std::size_t r) {
    if (r < 2)
        throw Error(ErrorKind::DimensionMismatch, "informationally complete basis needs dimension >= 2");
    std::vector<Effect> out;
    out.reserve(r * r);
    for (std::size_t j = 0; j < r; ++j)
        out.emplace_back(Projector::onto(StateVector::basis(r, j)));
    const double h = 1.0 / std::sqrt(2.0);
    for (std::size_t j = 0; j < r; ++j)
        for (std::size_t k = j + 1; k < r; ++k) {
            ComplexVector plus(r), plus_i(r);
            plus[j] = h;
            plus[k] = h;
            plus_i[j] = h;
            plus_i[k] = Complex(0.0, h);
            out.emplace_back(Projector::onto(StateVector(plus)));
            out.emplace_back(Projector::onto(StateVector(plus_i)));
        }
    return out;
}

} // namespace qdt
