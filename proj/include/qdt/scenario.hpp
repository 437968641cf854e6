#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "born.hpp"
#include "decision_variable.hpp"
#include "errors.hpp"
#include "format.hpp"
#include "operators.hpp"

namespace qdt {

/// Event "variable takes value".
struct EventRef {
    std::string variable;
    double value = 0.0;
};

struct DistributionQuery {
    std::string variable;
};
struct ExpectationQuery {
    std::string variable;
};
struct SequenceQuery {
    std::vector<EventRef> steps;
};
struct ConjunctionQuery {
    EventRef a;
    EventRef b;
};
struct TotalProbabilityQuery {
    std::string partition;
    EventRef target;
};
struct SureThingQuery {
    std::string condition;
    EventRef choice;
    double threshold = 0.5;
};
struct ReconstructCheckQuery {};

using Query = std::variant<DistributionQuery, ExpectationQuery, SequenceQuery, ConjunctionQuery, TotalProbabilityQuery,
                           SureThingQuery, ReconstructCheckQuery>;

inline std::string query_kind(const Query &q) {
    struct Visitor {
        std::string operator()(const DistributionQuery &) const { return "distribution"; }
        std::string operator()(const ExpectationQuery &) const { return "expectation"; }
        std::string operator()(const SequenceQuery &) const { return "sequence"; }
        std::string operator()(const ConjunctionQuery &) const { return "conjunction"; }
        std::string operator()(const TotalProbabilityQuery &) const { return "total_probability"; }
        std::string operator()(const SureThingQuery &) const { return "sure_thing"; }
        std::string operator()(const ReconstructCheckQuery &) const { return "reconstruct_check"; }
    };
    return std::visit(Visitor{}, q);
}

/// A decision situation: a context label, an initial state, named
/// variables over one Hilbert space and the questions to answer about them.
struct Scenario {
    std::string context;
    std::size_t dimension = 0;
    State initial_state = StateVector::basis(1, 0);
    std::vector<DecisionVariable> variables;
    std::vector<Query> queries;

    [[nodiscard]] const DecisionVariable *find(const std::string &name) const {
        for (const auto &v : variables)
            if (v.name() == name)
                return &v;
        return nullptr;
    }

    [[nodiscard]] const DecisionVariable &variable(const std::string &name) const {
        if (const auto *v = find(name))
            return *v;
        throw Error(ErrorKind::ValidationError, "undeclared variable '" + name + "'");
    }
};

namespace detail {

using nlohmann::json;

inline std::string line_column(const std::string &text, std::size_t byte) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < text.size() && i + 1 < byte; ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

[[noreturn]] inline void invalid(const std::string &path, const std::string &what) {
    throw Error(ErrorKind::ValidationError, (path.empty() ? "/" : path) + ": " + what);
}

class ScenarioReader {
  public:
    Scenario read(const json &doc) {
        if (!doc.is_object())
            invalid("", "document must be an object");
        allow_keys(doc, "", {"context", "dimension", "state", "variables", "queries"});

        Scenario s;
        if (doc.contains("context"))
            s.context = string_at(doc["context"], "/context");
        const auto &dim = required(doc, "", "dimension");
        if (!dim.is_number_integer() || dim.get<long long>() < 1)
            invalid("/dimension", "must be a positive integer");
        if (dim.get<long long>() > 1024)
            invalid("/dimension", "dimensions above 1024 are not supported");
        s.dimension = dim.get<std::size_t>();
        dim_ = s.dimension;

        s.initial_state = read_state(required(doc, "", "state"), "/state");

        const auto &vars = required(doc, "", "variables");
        if (!vars.is_array())
            invalid("/variables", "must be an array");
        std::set<std::string> names;
        for (std::size_t i = 0; i < vars.size(); ++i) {
            const std::string path = "/variables/" + std::to_string(i);
            auto v = read_variable(vars[i], path);
            if (!names.insert(v.name()).second)
                invalid(path + "/name", "variable name '" + v.name() + "' is declared twice");
            s.variables.push_back(std::move(v));
        }

        if (doc.contains("queries")) {
            const auto &qs = doc["queries"];
            if (!qs.is_array())
                invalid("/queries", "must be an array");
            for (std::size_t i = 0; i < qs.size(); ++i)
                s.queries.push_back(read_query(s, qs[i], "/queries/" + std::to_string(i)));
        }
        return s;
    }

  private:
    static const json &required(const json &obj, const std::string &path, const char *key) {
        if (!obj.contains(key))
            invalid(path, std::string("missing required key '") + key + "'");
        return obj[key];
    }

    static void allow_keys(const json &obj, const std::string &path, std::initializer_list<const char *> keys) {
        for (const auto &item : obj.items()) {
            bool known = false;
            for (const char *k : keys)
                known = known || item.key() == k;
            if (!known)
                invalid(path, "unknown key '" + item.key() + "'");
        }
    }

    static std::string string_at(const json &node, const std::string &path) {
        if (!node.is_string())
            invalid(path, "must be a string");
        return node.get<std::string>();
    }

    static double number_at(const json &node, const std::string &path) {
        if (!node.is_number())
            invalid(path, "must be a number");
        const double x = node.get<double>();
        if (!std::isfinite(x))
            invalid(path, "must be finite");
        return x;
    }

    static Complex complex_at(const json &node, const std::string &path) {
        if (!node.is_array() || node.size() != 2)
            invalid(path, "complex numbers are written as [re, im]");
        return {number_at(node[0], path + "/0"), number_at(node[1], path + "/1")};
    }

    ComplexVector vector_at(const json &node, const std::string &path) const {
        if (!node.is_array())
            invalid(path, "vector must be an array of [re, im] pairs");
        if (node.size() != dim_)
            throw Error(ErrorKind::DimensionMismatch, path + ": vector has " + std::to_string(node.size()) +
                                                          " components, dimension is " + std::to_string(dim_));
        ComplexVector v;
        for (std::size_t i = 0; i < node.size(); ++i)
            v.push_back(complex_at(node[i], path + "/" + std::to_string(i)));
        return v;
    }

    // Engine invariants raised while building an object become validation
    // errors naming the object; dimension errors keep their kind.
    template <typename Build>
    static auto validated(const std::string &path, Build &&build) {
        try {
            return build();
        } catch (const Error &e) {
            if (e.kind() == ErrorKind::DimensionMismatch || e.kind() == ErrorKind::ValidationError)
                throw;
            invalid(path, e.what());
        }
    }

    State read_state(const json &node, const std::string &path) const {
        if (!node.is_object() || node.size() != 1 || !(node.contains("vector") || node.contains("density")))
            invalid(path, "state must be {\"vector\": [...]} or {\"density\": [[...], ...]}");
        if (node.contains("vector")) {
            auto amps = vector_at(node["vector"], path + "/vector");
            return validated(path + "/vector", [&] { return State(StateVector(amps)); });
        }
        const auto &rows = node["density"];
        if (!rows.is_array())
            invalid(path + "/density", "must be an array of rows");
        if (rows.size() != dim_)
            throw Error(ErrorKind::DimensionMismatch, path + "/density: " + std::to_string(rows.size()) +
                                                          " rows, dimension is " + std::to_string(dim_));
        ComplexMatrix m(dim_, dim_);
        for (std::size_t i = 0; i < dim_; ++i) {
            const auto row = vector_at(rows[i], path + "/density/" + std::to_string(i));
            for (std::size_t j = 0; j < dim_; ++j)
                m(i, j) = row[j];
        }
        return validated(path + "/density", [&] { return State(DensityOperator(m)); });
    }

    DecisionVariable read_variable(const json &node, const std::string &path) const {
        if (!node.is_object())
            invalid(path, "variable must be an object");
        allow_keys(node, path, {"name", "values", "eigenvectors", "basis_angle_degrees"});
        const std::string name = string_at(required(node, path, "name"), path + "/name");
        if (name.empty())
            invalid(path + "/name", "must not be empty");
        const auto &vals = required(node, path, "values");
        if (!vals.is_array() || vals.empty())
            invalid(path + "/values", "must be a non-empty array of numbers");
        std::vector<double> values;
        for (std::size_t i = 0; i < vals.size(); ++i)
            values.push_back(number_at(vals[i], path + "/values/" + std::to_string(i)));

        const bool has_vectors = node.contains("eigenvectors");
        const bool has_angle = node.contains("basis_angle_degrees");
        if (has_vectors == has_angle)
            invalid(path, "give exactly one of 'eigenvectors' or 'basis_angle_degrees'");

        if (has_angle) {
            const double angle = number_at(node["basis_angle_degrees"], path + "/basis_angle_degrees");
            if (dim_ != 2)
                invalid(path + "/basis_angle_degrees", "shorthand requires dimension 2");
            if (values.size() != 2)
                invalid(path + "/values", "shorthand requires exactly two values");
            return validated(path, [&] { return variable_from_angle(name, values[0], values[1], angle); });
        }

        const auto &groups = node["eigenvectors"];
        if (!groups.is_array() || groups.size() != values.size())
            invalid(path + "/eigenvectors", "needs one group of eigenvectors per value");
        std::vector<std::vector<StateVector>> basis;
        for (std::size_t g = 0; g < groups.size(); ++g) {
            const std::string gpath = path + "/eigenvectors/" + std::to_string(g);
            if (!groups[g].is_array() || groups[g].empty())
                invalid(gpath, "eigenvector group must be a non-empty array of vectors");
            std::vector<StateVector> group;
            for (std::size_t k = 0; k < groups[g].size(); ++k) {
                const std::string vpath = gpath + "/" + std::to_string(k);
                auto amps = vector_at(groups[g][k], vpath);
                group.push_back(validated(vpath, [&] { return StateVector(amps); }));
            }
            basis.push_back(std::move(group));
        }
        return validated(path, [&] { return variable_from_spectrum(name, values, basis); });
    }

    static EventRef read_event(const Scenario &s, const json &node, const std::string &path) {
        if (!node.is_object())
            invalid(path, "event must be {\"variable\": name, \"value\": number}");
        allow_keys(node, path, {"variable", "value"});
        EventRef e;
        e.variable = string_at(required(node, path, "variable"), path + "/variable");
        e.value = number_at(required(node, path, "value"), path + "/value");
        const auto *v = s.find(e.variable);
        if (v == nullptr)
            invalid(path + "/variable", "undeclared variable '" + e.variable + "'");
        validated(path + "/value", [&] { return v->index_of(e.value); });
        return e;
    }

    static std::string read_variable_name(const Scenario &s, const json &node, const std::string &path) {
        auto name = string_at(node, path);
        if (s.find(name) == nullptr)
            invalid(path, "undeclared variable '" + name + "'");
        return name;
    }

    static Query read_query(const Scenario &s, const json &node, const std::string &path) {
        if (!node.is_object())
            invalid(path, "query must be an object");
        const std::string kind = string_at(required(node, path, "kind"), path + "/kind");
        const bool pure = std::holds_alternative<StateVector>(s.initial_state);
        auto needs_pure = [&] {
            if (!pure)
                invalid(path, "query kind '" + kind + "' needs a pure (vector) initial state");
        };

        if (kind == "distribution" || kind == "expectation") {
            allow_keys(node, path, {"kind", "variable"});
            auto name = read_variable_name(s, required(node, path, "variable"), path + "/variable");
            if (kind == "distribution")
                return DistributionQuery{name};
            return ExpectationQuery{name};
        }
        if (kind == "sequence") {
            allow_keys(node, path, {"kind", "steps"});
            needs_pure();
            const auto &steps = required(node, path, "steps");
            if (!steps.is_array() || steps.empty())
                invalid(path + "/steps", "must be a non-empty array of events");
            SequenceQuery q;
            for (std::size_t i = 0; i < steps.size(); ++i)
                q.steps.push_back(read_event(s, steps[i], path + "/steps/" + std::to_string(i)));
            return q;
        }
        if (kind == "conjunction") {
            allow_keys(node, path, {"kind", "a", "b"});
            needs_pure();
            return ConjunctionQuery{read_event(s, required(node, path, "a"), path + "/a"),
                                    read_event(s, required(node, path, "b"), path + "/b")};
        }
        if (kind == "total_probability") {
            allow_keys(node, path, {"kind", "partition", "target"});
            needs_pure();
            return TotalProbabilityQuery{
                read_variable_name(s, required(node, path, "partition"), path + "/partition"),
                read_event(s, required(node, path, "target"), path + "/target")};
        }
        if (kind == "sure_thing") {
            allow_keys(node, path, {"kind", "condition", "choice", "threshold"});
            needs_pure();
            SureThingQuery q;
            q.condition = read_variable_name(s, required(node, path, "condition"), path + "/condition");
            if (s.variable(q.condition).size() != 2)
                invalid(path + "/condition", "condition variable must have exactly two values");
            q.choice = read_event(s, required(node, path, "choice"), path + "/choice");
            if (node.contains("threshold")) {
                q.threshold = number_at(node["threshold"], path + "/threshold");
                if (q.threshold < 0.0 || q.threshold > 1.0)
                    invalid(path + "/threshold", "must lie in [0, 1]");
            }
            return q;
        }
        if (kind == "reconstruct_check") {
            allow_keys(node, path, {"kind"});
            if (s.dimension < 2)
                invalid(path, "reconstruct_check needs dimension >= 2");
            return ReconstructCheckQuery{};
        }
        invalid(path + "/kind", "unknown query kind '" + kind + "'");
    }

    std::size_t dim_ = 0;
};

inline json complex_json(Complex z) { return json::array({z.real(), z.imag()}); }

inline json vector_json(const ComplexVector &v) {
    json a = json::array();
    for (const auto &z : v)
        a.push_back(complex_json(z));
    return a;
}

inline json event_json(const EventRef &e) { return json{{"variable", e.variable}, {"value", e.value}}; }

} // namespace detail

/// Parse and validate a scenario document. Malformed text raises SyntaxError
/// with line and column; structurally valid documents that break an invariant
/// raise ValidationError (or DimensionMismatch) naming the offending path.
inline Scenario parse_scenario(const std::string &text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error &e) {
        throw Error(ErrorKind::SyntaxError, detail::line_column(text, e.byte) + ": " + e.what());
    }
    return detail::ScenarioReader{}.read(doc);
}

/// Serialize a scenario back to the document format. Variables are written
/// with explicit eigenvectors, so the angle shorthand does not survive.
inline std::string write_scenario(const Scenario &s) {
    using nlohmann::json;
    json doc;
    doc["context"] = s.context;
    doc["dimension"] = s.dimension;
    if (const auto *psi = std::get_if<StateVector>(&s.initial_state)) {
        doc["state"] = json{{"vector", detail::vector_json(psi->amplitudes())}};
    } else {
        const auto &m = std::get<DensityOperator>(s.initial_state).matrix();
        json rows = json::array();
        for (std::size_t i = 0; i < m.rows(); ++i) {
            ComplexVector row(m.cols());
            for (std::size_t j = 0; j < m.cols(); ++j)
                row[j] = m(i, j);
            rows.push_back(detail::vector_json(row));
        }
        doc["state"] = json{{"density", rows}};
    }
    json vars = json::array();
    for (const auto &v : s.variables) {
        json groups = json::array();
        for (const auto &p : v.projectors()) {
            const auto sd = p.eig();
            json group = json::array();
            for (std::size_t k = s.dimension - p.rank(); k < s.dimension; ++k)
                group.push_back(detail::vector_json(sd.vector(k)));
            groups.push_back(group);
        }
        vars.push_back(json{{"name", v.name()}, {"values", v.values()}, {"eigenvectors", groups}});
    }
    doc["variables"] = vars;
    json queries = json::array();
    for (const auto &q : s.queries) {
        json jq{{"kind", query_kind(q)}};
        std::visit(
            [&](const auto &x) {
                using T = std::decay_t<decltype(x)>;
                if constexpr (std::is_same_v<T, DistributionQuery> || std::is_same_v<T, ExpectationQuery>) {
                    jq["variable"] = x.variable;
                } else if constexpr (std::is_same_v<T, SequenceQuery>) {
                    json steps = json::array();
                    for (const auto &e : x.steps)
                        steps.push_back(detail::event_json(e));
                    jq["steps"] = steps;
                } else if constexpr (std::is_same_v<T, ConjunctionQuery>) {
                    jq["a"] = detail::event_json(x.a);
                    jq["b"] = detail::event_json(x.b);
                } else if constexpr (std::is_same_v<T, TotalProbabilityQuery>) {
                    jq["partition"] = x.partition;
                    jq["target"] = detail::event_json(x.target);
                } else if constexpr (std::is_same_v<T, SureThingQuery>) {
                    jq["condition"] = x.condition;
                    jq["choice"] = detail::event_json(x.choice);
                    jq["threshold"] = x.threshold;
                }
            },
            q);
        queries.push_back(jq);
    }
    doc["queries"] = queries;
    return doc.dump(2) + "\n";
}

} // namespace qdt
