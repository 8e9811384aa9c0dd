#include "robust_search/json_codec.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "robust_search/error.hpp"

namespace robust_search {
namespace {

using nlohmann::json;

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

const json& field(const json& j, const char* name) {
    if (!j.is_object()) throw ValidationError("expected a JSON object");
    const auto it = j.find(name);
    if (it == j.end()) throw ValidationError(std::string("missing field '") + name + "'");
    return *it;
}

double num(const json& j, const char* name) { return number_from_json(field(j, name)); }

double num_or(const json& j, const char* name, double fallback) {
    if (!j.is_object()) throw ValidationError("expected a JSON object");
    const auto it = j.find(name);
    return it == j.end() ? fallback : number_from_json(*it);
}

std::vector<double> numbers(const json& j, const char* name) {
    const json& arr = field(j, name);
    if (!arr.is_array()) throw ValidationError(std::string("field '") + name + "' must be an array");
    std::vector<double> out;
    out.reserve(arr.size());
    for (const auto& v : arr) out.push_back(number_from_json(v));
    return out;
}

json numbers_to_json(const std::vector<double>& v) {
    json arr = json::array();
    for (double x : v) arr.push_back(number_to_json(x));
    return arr;
}

std::string tag(const json& j, const char* name) {
    const json& t = field(j, name);
    if (!t.is_string()) throw ValidationError(std::string("field '") + name + "' must be a string");
    return t.get<std::string>();
}

PureEnvironment pure_from_json(const json& j) {
    const std::string type = tag(j, "type");
    if (type == "binary") return Binary{num(j, "z"), num(j, "sigma")};
    if (type == "two_point") return TwoPoint{num(j, "w"), num(j, "z"), num(j, "sigma")};
    if (type == "discrete") return Discrete{numbers(j, "support"), numbers(j, "probs")};
    throw ValidationError("unknown environment type '" + type + "'");
}

}  // namespace

json number_to_json(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return v;
}

double number_from_json(const json& j) {
    if (j.is_number()) return j.get<double>();
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (s == "inf" || s == "Infinity") return std::numeric_limits<double>::infinity();
        if (s == "-inf" || s == "-Infinity") return -std::numeric_limits<double>::infinity();
        if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
    }
    throw ValidationError("expected a number, got " + j.dump());
}

void to_json(json& j, const CostModel& c) {
    j = json{{"delta", number_to_json(c.delta)}, {"kappa", number_to_json(c.kappa)}};
}

void from_json(const json& j, CostModel& c) {
    c.delta = num(j, "delta");
    c.kappa = num_or(j, "kappa", 0.0);
}

json environment_to_json(const PureEnvironment& env) {
    return std::visit(
        overloaded{
            [](const Binary& b) {
                return json{{"type", "binary"}, {"z", number_to_json(b.z)},
                            {"sigma", number_to_json(b.sigma)}};
            },
            [](const TwoPoint& t) {
                return json{{"type", "two_point"}, {"w", number_to_json(t.w)},
                            {"z", number_to_json(t.z)}, {"sigma", number_to_json(t.sigma)}};
            },
            [](const Discrete& d) {
                return json{{"type", "discrete"}, {"support", numbers_to_json(d.support)},
                            {"probs", numbers_to_json(d.probs)}};
            },
        },
        env);
}

json environment_to_json(const Environment& env) {
    if (const auto* m = std::get_if<Mixture>(&env)) {
        json comps = json::array();
        for (const auto& c : m->components) comps.push_back(environment_to_json(c));
        return json{{"type", "mixture"}, {"components", comps},
                    {"weights", numbers_to_json(m->weights)}};
    }
    return environment_to_json(as_pure(env));
}

Environment environment_from_json(const json& j) {
    if (tag(j, "type") == "mixture") {
        Mixture m;
        const json& comps = field(j, "components");
        if (!comps.is_array()) throw ValidationError("mixture components must be an array");
        for (const auto& c : comps) m.components.push_back(pure_from_json(c));
        m.weights = numbers(j, "weights");
        validate(m);
        return m;
    }
    PureEnvironment p = pure_from_json(j);
    validate(p);
    return std::visit([](auto&& e) -> Environment { return e; }, p);
}

json rule_to_json(const StoppingRule& rule) {
    json j = std::visit(
        overloaded{
            [](const Constant& r) { return json{{"q", number_to_json(r.q)}}; },
            [](const QStar& r) {
                return json{{"xbar", number_to_json(r.xbar)}, {"delta", number_to_json(r.delta)}};
            },
            [](const BinaryRobust& r) {
                return json{{"x0", number_to_json(r.x0)}, {"xbar", number_to_json(r.xbar)},
                            {"delta", number_to_json(r.delta)}};
            },
            [](const BoundedRobust& r) {
                return json{{"x0", number_to_json(r.x0)}, {"xbar", number_to_json(r.xbar)},
                            {"delta", number_to_json(r.delta)}};
            },
            [](const Linear& r) {
                return json{{"alpha", number_to_json(r.alpha)}, {"delta", number_to_json(r.delta)}};
            },
            [](const Sqrt& r) {
                return json{{"beta", number_to_json(r.beta)}, {"delta", number_to_json(r.delta)},
                            {"lower", number_to_json(r.lower)}};
            },
            [](const Piecewise& r) {
                return json{{"knots", numbers_to_json(r.knots)}, {"probs", numbers_to_json(r.probs)}};
            },
            [](const Cutoff& r) { return json{{"threshold", number_to_json(r.threshold)}}; },
        },
        rule.family());
    j["family"] = rule.family_name();
    return j;
}

StoppingRule rule_from_json(const json& j) {
    const std::string family = tag(j, "family");
    StoppingRule rule;
    if (family == "constant") {
        rule = Constant{num(j, "q")};
    } else if (family == "qstar") {
        rule = QStar{num(j, "xbar"), num(j, "delta")};
    } else if (family == "binary_robust") {
        rule = BinaryRobust{num(j, "x0"), num(j, "xbar"), num(j, "delta")};
    } else if (family == "bounded_robust") {
        rule = BoundedRobust{num(j, "x0"), num(j, "xbar"), num(j, "delta")};
    } else if (family == "linear") {
        rule = Linear{num(j, "alpha"), num(j, "delta")};
    } else if (family == "sqrt") {
        rule = Sqrt{num(j, "beta"), num(j, "delta"), num_or(j, "lower", 1.0 / 89.0)};
    } else if (family == "piecewise") {
        rule = Piecewise{numbers(j, "knots"), numbers(j, "probs")};
    } else if (family == "cutoff") {
        rule = Cutoff{num(j, "threshold")};
    } else {
        throw ValidationError("unknown rule family '" + family + "'");
    }
    validate(rule);
    return rule;
}

json point_to_json(const PointRatio& p) {
    return json{{"y", number_to_json(p.y)},         {"ratio", number_to_json(p.ratio)},
                {"argmin_z", number_to_json(p.z)}, {"argmin_sigma", number_to_json(p.sigma)},
                {"scenario", to_string(p.scenario)}};
}

json report_to_json(const RatioReport& r, bool with_curve) {
    json j{{"ratio", number_to_json(r.ratio)},
           {"argmin_env", environment_to_json(PureEnvironment{r.argmin_env})},
           {"argmin_y", number_to_json(r.argmin_y)},
           {"scenario", to_string(r.scenario)},
           {"monotone_ratio", r.monotone_ratio}};
    if (with_curve) {
        json curve = json::array();
        for (const auto& p : r.curve) curve.push_back(point_to_json(p));
        j["curve"] = std::move(curve);
    }
    return j;
}

json twopoint_to_json(const TwoPointReport& r) {
    return json{{"ratio", number_to_json(r.ratio)},
                {"argmin_env", environment_to_json(PureEnvironment{r.argmin_env})},
                {"argmin_y", number_to_json(r.argmin_y)},
                {"scenario", to_string(r.scenario)},
                {"binary_ratio", number_to_json(r.binary_ratio)},
                {"interior_ratio", number_to_json(r.interior_ratio)}};
}

json estimate_to_json(const Estimate& e) {
    return json{{"mean", number_to_json(e.mean)},
                {"standard_error", number_to_json(e.standard_error)},
                {"n_paths", e.n_paths},
                {"seed", e.seed}};
}

}  // namespace robust_search
