#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

#include "random.hpp"
#include "reconstruction.hpp"
#include "report.hpp"
#include "scenario.hpp"
#include "spin_model.hpp"

namespace qdt::demos {

/// Doctor choosing between medicines A and B in a 2-dimensional space.
/// "A helps" projects onto angle_a, "B helps" onto angle_b, and the patient
/// state is (1, 0). Both variables take value 1 for "helps", 0 otherwise.
inline Scenario medical_scenario(double angle_a_degrees = 40.0, double angle_b_degrees = 70.0) {
    Scenario s;
    s.context = "doctor and patient, medicines A and B";
    s.dimension = 2;
    s.initial_state = StateVector::basis(2, 0);
    s.variables.push_back(variable_from_angle("A", 1.0, 0.0, angle_a_degrees));
    s.variables.push_back(variable_from_angle("B", 1.0, 0.0, angle_b_degrees));
    s.queries = {
        DistributionQuery{"A"},
        DistributionQuery{"B"},
        SequenceQuery{{{"A", 1.0}, {"B", 1.0}}},
        ConjunctionQuery{{"A", 1.0}, {"B", 1.0}},
        TotalProbabilityQuery{"B", {"A", 1.0}},
        SureThingQuery{"B", {"A", 1.0}, 0.5},
    };
    return s;
}

inline Report medical_report(double angle_a_degrees = 40.0, double angle_b_degrees = 70.0) {
    auto rep = run_scenario(medical_scenario(angle_a_degrees, angle_b_degrees));
    rep.title = "demo medical";
    return rep;
}

/// Hidden-variable spin model against Born's rule for two directions
/// separated by delta. Direction a sits at 0, b at delta.
inline Report spin_report(double delta_degrees, std::size_t samples, std::uint64_t seed,
                          const spin::SamplingOptions &opts = {}) {
    const auto a = spin::Direction::from_degrees(0.0);
    const auto b = spin::Direction::from_degrees(delta_degrees);
    const auto cmp = spin::comparison_report(a, b, samples, seed, opts);

    Report rep;
    rep.title = "demo spin";
    rep.context = "phi uniform on the circle, theta = sign(cos(direction - phi))";
    rep.seed = seed;
    QueryResult marg;
    marg.index = 1;
    marg.kind = "marginals";
    marg.echo = "P(theta = +1) per direction from " + std::to_string(samples) + " samples";
    marg.values = {{"p_plus_a", spin::marginal_plus_fraction(a, samples, seed, opts)},
                   {"p_plus_b", spin::marginal_plus_fraction(b, samples, seed, opts)}};
    QueryResult cond;
    cond.index = 2;
    cond.kind = "conditional";
    cond.echo = "P(theta_b = +1 | theta_a = +1), separation " + format_shortest(delta_degrees) + " degrees";
    cond.values = {{"classical_estimate", cmp.classical_estimate},
                   {"classical_exact", cmp.classical_exact},
                   {"quantum", cmp.quantum},
                   {"gap", cmp.gap}};
    rep.results = {marg, cond};
    return rep;
}

/// Random density of the given dimension, its exact probabilities on the
/// informationally complete effects, and the reconstruction error.
inline Report reconstruct_report(std::size_t dim, std::uint64_t seed) {
    Rng rng(seed);
    const auto rho = random_density(dim, rng);
    const auto effects = ic_effect_basis(dim);
    std::vector<GPMSample> samples;
    for (const auto &f : effects)
        samples.push_back({f, gpm_evaluate(rho, f)});
    const auto rec = reconstruct_density(samples);

    Report rep;
    rep.title = "demo reconstruct";
    rep.context = "random density operator, dimension " + std::to_string(dim);
    rep.seed = seed;
    QueryResult r;
    r.index = 1;
    r.kind = "reconstruct";
    r.echo = std::to_string(effects.size()) + " effect probabilities";
    r.values = {{"dimension", static_cast<double>(dim)},
                {"effects", static_cast<double>(effects.size())},
                {"span_condition_number", span_condition_number(effects)},
                {"frobenius_error", frobenius_norm(rec.density.matrix() - rho.matrix())},
                {"max_residual", rec.max_residual},
                {"min_eigenvalue", rec.min_eigenvalue}};
    r.flags = {{"projected", rec.projected}};
    rep.results = {r};
    return rep;
}

} // namespace qdt::demos
