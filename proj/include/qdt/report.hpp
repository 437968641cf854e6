#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "born.hpp"
#include "format.hpp"
#include "phenomena.hpp"
#include "reconstruction.hpp"
#include "scenario.hpp"

namespace qdt {

inline constexpr std::string_view engine_version = "qdt 1.0.0";

struct NamedValue {
    std::string name;
    double value = 0.0;
};

struct NamedFlag {
    std::string name;
    bool value = false;
};

struct QueryResult {
    std::size_t index = 0; // 1-based
    std::string kind;
    std::string echo;
    std::vector<NamedValue> values;
    std::vector<NamedFlag> flags;
};

struct Report {
    std::string title = "scenario";
    std::string context;
    std::uint64_t seed = 0;
    std::vector<std::pair<std::string, double>> tolerances = default_tolerances().listing();
    std::vector<QueryResult> results;
};

enum class ReportFormat { Text, Csv, Structured };

namespace detail {

inline std::string event_text(const EventRef &e) { return e.variable + "=" + format_shortest(e.value); }

class QueryRunner {
  public:
    QueryRunner(const Scenario &s, const Tolerances &tol) : s_(s), tol_(tol) {}

    void operator()(const DistributionQuery &q, QueryResult &out) const {
        const auto &v = s_.variable(q.variable);
        const auto d = outcome_distribution(s_.initial_state, v);
        out.echo = "distribution of " + q.variable;
        for (std::size_t j = 0; j < d.values.size(); ++j) {
            out.values.push_back({"value_" + std::to_string(j + 1), d.values[j]});
            out.values.push_back({"probability_" + std::to_string(j + 1), d.probabilities[j]});
        }
        out.values.push_back({"total", d.total()});
    }

    void operator()(const ExpectationQuery &q, QueryResult &out) const {
        const auto &v = s_.variable(q.variable);
        out.echo = "expectation of " + q.variable;
        out.values.push_back({"expectation", expectation(s_.initial_state, v)});
        out.values.push_back({"mean_of_distribution", outcome_distribution(s_.initial_state, v).mean()});
    }

    void operator()(const SequenceQuery &q, QueryResult &out) const {
        std::vector<MeasurementStep> steps;
        for (std::size_t i = 0; i < q.steps.size(); ++i) {
            steps.push_back({&s_.variable(q.steps[i].variable), q.steps[i].value});
            out.echo += (i == 0 ? "" : " then ") + event_text(q.steps[i]);
        }
        out.values.push_back({"probability", sequential_probability(pure(), steps, tol_)});
    }

    void operator()(const ConjunctionQuery &q, QueryResult &out) const {
        const auto &pa = projector(q.a);
        const auto &pb = projector(q.b);
        const auto rep = conjunction_report(pure(), pa, pb);
        out.echo = "A: " + event_text(q.a) + ", B: " + event_text(q.b) + " (A then B = B measured after A)";
        out.values = {{"p_A", rep.p_A},
                      {"p_B", rep.p_B},
                      {"p_A_then_B", rep.p_A_then_B},
                      {"p_B_then_A", rep.p_B_then_A},
                      {"order_asymmetry", rep.order_asymmetry},
                      {"commutation_defect", commutation_defect(pa, pb)}};
        out.flags = {{"conjunction_A_then_B_exceeds_B", rep.conjunction_flag}};
    }

    void operator()(const TotalProbabilityQuery &q, QueryResult &out) const {
        const auto &partition = s_.variable(q.partition);
        const auto rep = total_probability_report(pure(), partition, projector(q.target), tol_);
        out.echo = event_text(q.target) + " directly vs after measuring " + q.partition + " first";
        out.values = {{"p_direct", rep.p_direct}, {"p_via_partition", rep.p_via_partition},
                      {"interference", rep.interference}};
        for (std::size_t j = 0; j < rep.partition_terms.size(); ++j)
            out.values.push_back({"term_" + q.partition + "=" + format_shortest(rep.partition_values[j]),
                                  rep.partition_terms[j]});
    }

    void operator()(const SureThingQuery &q, QueryResult &out) const {
        const auto rep = sure_thing_check(pure(), s_.variable(q.condition), projector(q.choice), q.threshold, tol_);
        out.echo = "choice " + event_text(q.choice) + " under condition " + q.condition + " (X: " + q.condition +
                   "=" + format_shortest(rep.value_X) + ", not-X: " + q.condition + "=" +
                   format_shortest(rep.value_not_X) + ")";
        out.values = {{"p_X", rep.p_X},
                      {"p_C_given_X", rep.p_C_given_X},
                      {"p_C_given_not_X", rep.p_C_given_not_X},
                      {"p_C", rep.p_C},
                      {"threshold", rep.threshold},
                      {"interference", rep.interference}};
        out.flags = {{"violation", rep.violation_flag}};
    }

    void operator()(const ReconstructCheckQuery &, QueryResult &out) const {
        const auto rho = as_density(s_.initial_state);
        const auto effects = ic_effect_basis(rho.dim());
        std::vector<GPMSample> samples;
        for (const auto &f : effects)
            samples.push_back({f, std::clamp(gpm_evaluate(rho, f), 0.0, 1.0)});
        const auto rec = reconstruct_density(samples, tol_);
        out.echo = "density round trip through " + std::to_string(effects.size()) + " effect probabilities";
        out.values = {{"frobenius_error", frobenius_norm(rec.density.matrix() - rho.matrix())},
                      {"max_residual", rec.max_residual},
                      {"min_eigenvalue", rec.min_eigenvalue}};
        out.flags = {{"projected", rec.projected}};
    }

  private:
    const StateVector &pure() const {
        if (const auto *psi = std::get_if<StateVector>(&s_.initial_state))
            return *psi;
        throw Error(ErrorKind::ValidationError, "query needs a pure initial state");
    }

    const Projector &projector(const EventRef &e) const {
        return s_.variable(e.variable).projector(e.value, tol_);
    }

    const Scenario &s_;
    const Tolerances &tol_;
};

inline std::string json_string(const std::string &s) { return nlohmann::json(s).dump(); }

inline std::string json_number(double x) {
    return std::isfinite(x) ? format_number(x) : json_string(format_number(x));
}

} // namespace detail

/// Answer every query of the scenario in order. Each query starts from the
/// initial state; collapses never carry over between queries. Engine errors
/// are rethrown with the query index prepended.
inline Report run_scenario(const Scenario &s, std::uint64_t seed = 0, const Tolerances &tol = default_tolerances()) {
    Report rep;
    rep.context = s.context;
    rep.seed = seed;
    rep.tolerances = tol.listing();
    const detail::QueryRunner runner(s, tol);
    for (std::size_t i = 0; i < s.queries.size(); ++i) {
        QueryResult out;
        out.index = i + 1;
        out.kind = query_kind(s.queries[i]);
        try {
            std::visit([&](const auto &q) { runner(q, out); }, s.queries[i]);
        } catch (const Error &e) {
            throw Error(e.kind(), "query " + std::to_string(i + 1) + " (" + out.kind + "): " + e.what());
        }
        rep.results.push_back(std::move(out));
    }
    return rep;
}

inline std::string emit_csv(const Report &rep) {
    std::string out = "query_index,name,value\n";
    for (const auto &r : rep.results) {
        const auto idx = std::to_string(r.index);
        for (const auto &v : r.values)
            out += idx + "," + v.name + "," + format_number(v.value) + "\n";
        for (const auto &f : r.flags)
            out += idx + "," + f.name + "," + (f.value ? "true" : "false") + "\n";
    }
    return out;
}

inline std::string emit_text(const Report &rep) {
    std::size_t width = 0;
    for (const auto &t : rep.tolerances)
        width = std::max(width, t.first.size());
    for (const auto &r : rep.results) {
        for (const auto &v : r.values)
            width = std::max(width, v.name.size());
        for (const auto &f : r.flags)
            width = std::max(width, f.name.size());
    }
    auto row = [&](const std::string &name, const std::string &value) {
        return "    " + name + std::string(width - name.size() + 2, ' ') + value + "\n";
    };

    std::string out;
    out += "engine:  " + std::string(engine_version) + "\n";
    out += "report:  " + rep.title + "\n";
    out += "context: " + rep.context + "\n";
    out += "seed:    " + std::to_string(rep.seed) + "\n";
    out += "tolerances:\n";
    for (const auto &t : rep.tolerances)
        out += row(t.first, format_number(t.second));
    out += "results: " + std::to_string(rep.results.size()) + "\n";
    for (const auto &r : rep.results) {
        out += "[" + std::to_string(r.index) + "] " + r.kind + ": " + r.echo + "\n";
        for (const auto &v : r.values)
            out += row(v.name, format_number(v.value));
        for (const auto &f : r.flags)
            out += row(f.name, f.value ? "true" : "false");
    }
    return out;
}

inline std::string emit_structured(const Report &rep) {
    using detail::json_number;
    using detail::json_string;
    std::string out = "{\n";
    out += "  \"engine\": " + json_string(std::string(engine_version)) + ",\n";
    out += "  \"report\": " + json_string(rep.title) + ",\n";
    out += "  \"context\": " + json_string(rep.context) + ",\n";
    out += "  \"seed\": " + std::to_string(rep.seed) + ",\n";
    out += "  \"tolerances\": {";
    for (std::size_t i = 0; i < rep.tolerances.size(); ++i)
        out += std::string(i == 0 ? "\n" : ",\n") + "    " + json_string(rep.tolerances[i].first) + ": " +
               json_number(rep.tolerances[i].second);
    out += rep.tolerances.empty() ? "},\n" : "\n  },\n";
    out += "  \"results\": [";
    for (std::size_t i = 0; i < rep.results.size(); ++i) {
        const auto &r = rep.results[i];
        out += std::string(i == 0 ? "\n" : ",\n") + "    {\n";
        out += "      \"query_index\": " + std::to_string(r.index) + ",\n";
        out += "      \"kind\": " + json_string(r.kind) + ",\n";
        out += "      \"query\": " + json_string(r.echo) + ",\n";
        out += "      \"values\": {";
        for (std::size_t k = 0; k < r.values.size(); ++k)
            out += std::string(k == 0 ? "\n" : ",\n") + "        " + json_string(r.values[k].name) + ": " +
                   json_number(r.values[k].value);
        out += r.values.empty() ? "},\n" : "\n      },\n";
        out += "      \"flags\": {";
        for (std::size_t k = 0; k < r.flags.size(); ++k)
            out += std::string(k == 0 ? "\n" : ",\n") + "        " + json_string(r.flags[k].name) + ": " +
                   (r.flags[k].value ? "true" : "false");
        out += r.flags.empty() ? "}\n" : "\n      }\n";
        out += "    }";
    }
    out += rep.results.empty() ? "]\n" : "\n  ]\n";
    out += "}\n";
    return out;
}

inline std::string emit_report(const Report &rep, ReportFormat format) {
    switch (format) {
    case ReportFormat::Text: return emit_text(rep);
    case ReportFormat::Csv: return emit_csv(rep);
    case ReportFormat::Structured: return emit_structured(rep);
    }
    return {};
}

} // namespace qdt
