#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "born.hpp"
#include "decision_variable.hpp"
#include "operators.hpp"

namespace qdt {

/// Probabilities of two events alone and in both measurement orders.
/// "A then B" is ||P_B P_A psi||^2.
struct ConjunctionReport {
    double p_A = 0.0;
    double p_B = 0.0;
    double p_A_then_B = 0.0;
    double p_B_then_A = 0.0;
    bool conjunction_flag = false; // p_A_then_B exceeds p_B
    double order_asymmetry = 0.0;  // |p_A_then_B - p_B_then_A|
};

inline ConjunctionReport conjunction_report(const StateVector &psi, const Projector &a, const Projector &b) {
    require_same_dim(psi.dim(), a.dim(), "conjunction_report");
    require_same_dim(psi.dim(), b.dim(), "conjunction_report");
    ConjunctionReport rep;
    rep.p_A = event_probability(psi, a);
    rep.p_B = event_probability(psi, b);
    const Projector ab[] = {a, b};
    const Projector ba[] = {b, a};
    rep.p_A_then_B = sequential_probability(psi, ab);
    rep.p_B_then_A = sequential_probability(psi, ba);
    rep.conjunction_flag = rep.p_A_then_B > rep.p_B + 1e-12;
    rep.order_asymmetry = std::abs(rep.p_A_then_B - rep.p_B_then_A);
    return rep;
}

/// Law-of-total-probability comparison: the partition is measured first,
/// the target event second.
struct TotalProbabilityReport {
    double p_direct = 0.0;                 // ||P_A psi||^2
    double p_via_partition = 0.0;          // sum_j ||P_A P_j psi||^2
    double interference = 0.0;             // p_direct - p_via_partition
    std::vector<double> partition_values;
    std::vector<double> partition_terms;   // ||P_A P_j psi||^2 per partition value
};

inline TotalProbabilityReport total_probability_report(const StateVector &psi, const DecisionVariable &partition,
                                                       const Projector &target,
                                                       const Tolerances &tol = default_tolerances()) {
    require_same_dim(psi.dim(), partition.dim(), "total_probability_report");
    require_same_dim(psi.dim(), target.dim(), "total_probability_report");
    ComplexMatrix sum(psi.dim(), psi.dim());
    for (const auto &p : partition.projectors())
        sum += p.matrix();
    if (frobenius_norm(sum - ComplexMatrix::identity(psi.dim())) > tol.orthonormality)
        throw Error(ErrorKind::NotAPartition, "eigenprojectors of '" + partition.name() + "' do not resolve I");

    TotalProbabilityReport rep;
    rep.p_direct = event_probability(psi, target);
    for (std::size_t j = 0; j < partition.size(); ++j) {
        const Projector chain[] = {partition.projectors()[j], target};
        const double term = sequential_probability(psi, chain);
        rep.partition_values.push_back(partition.values()[j]);
        rep.partition_terms.push_back(term);
        rep.p_via_partition += term;
    }
    rep.interference = rep.p_direct - rep.p_via_partition;
    return rep;
}

/// Interference recomputed from cross amplitudes,
/// 2 Re sum_{j<k} <P_A P_j psi, P_A P_k psi>.
inline double interference_from_amplitudes(const StateVector &psi, const DecisionVariable &partition,
                                           const Projector &target) {
    std::vector<ComplexVector> amps;
    for (const auto &p : partition.projectors())
        amps.push_back(matvec(target.matrix(), matvec(p.matrix(), psi.amplitudes())));
    double s = 0.0;
    for (std::size_t j = 0; j < amps.size(); ++j)
        for (std::size_t k = j + 1; k < amps.size(); ++k)
            s += 2.0 * inner(amps[j], amps[k]).real();
    return s;
}

struct SureThingReport {
    double value_X = 0.0;     // first value of the condition variable
    double value_not_X = 0.0; // second value
    double p_X = 0.0;
    double p_C_given_X = 0.0;
    double p_C_given_not_X = 0.0;
    double p_C = 0.0;
    double threshold = 0.5;
    bool violation_flag = false; // both conditionals above threshold, unconditioned not
    double interference = 0.0;   // total-probability interference of C over the condition
};

/// Sure-thing principle check for a two-valued condition and a choice event C.
inline SureThingReport sure_thing_check(const StateVector &psi, const DecisionVariable &condition,
                                        const Projector &choice, double threshold = 0.5,
                                        const Tolerances &tol = default_tolerances()) {
    if (condition.size() != 2)
        throw Error(ErrorKind::InvariantViolation,
                    "sure-thing condition '" + condition.name() + "' must have exactly two values");
    require_same_dim(psi.dim(), condition.dim(), "sure_thing_check");
    require_same_dim(psi.dim(), choice.dim(), "sure_thing_check");

    SureThingReport rep;
    rep.value_X = condition.values()[0];
    rep.value_not_X = condition.values()[1];
    rep.threshold = threshold;
    rep.p_X = event_probability(psi, condition.projectors()[0]);
    const auto psi_x = collapse(psi, condition.projectors()[0], tol);
    const auto psi_not_x = collapse(psi, condition.projectors()[1], tol);
    rep.p_C_given_X = event_probability(psi_x, choice);
    rep.p_C_given_not_X = event_probability(psi_not_x, choice);
    rep.p_C = event_probability(psi, choice);
    rep.violation_flag = std::min(rep.p_C_given_X, rep.p_C_given_not_X) > threshold && rep.p_C <= threshold;
    rep.interference = total_probability_report(psi, condition, choice, tol).interference;
    return rep;
}

/// ||P_A P_B - P_B P_A||_F
inline double commutation_defect(const Projector &a, const Projector &b) {
    require_same_dim(a.dim(), b.dim(), "commutation_defect");
    return frobenius_norm(commutator(a.matrix(), b.matrix()));
}

} // namespace qdt
