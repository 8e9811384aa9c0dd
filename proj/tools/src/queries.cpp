#include "robust_search/service/queries.hpp"

#include <algorithm>
#include <cmath>

#include "robust_search/error.hpp"
#include "robust_search/json_codec.hpp"

namespace robust_search::service {

using nlohmann::json;

Params params_from_json(const json& body) {
    if (!body.is_object()) throw ValidationError("request body must be a JSON object");
    Params p;
    for (const auto& [key, v] : body.items()) {
        if (v.is_number()) {
            p[key] = format_number(v.get<double>(), 17);
        } else if (v.is_string()) {
            p[key] = v.get<std::string>();
        } else if (v.is_object() || v.is_array()) {
            p[key] = v.dump();
        } else if (v.is_boolean()) {
            p[key] = v.get<bool>() ? "true" : "false";
        }
    }
    return p;
}

json rule_eval(const Params& p) {
    const StoppingRule rule = rule_from_params(p);
    const double y = require_number(p, "y");
    if (!(y >= 0.0) || !std::isfinite(y)) throw ValidationError("y must be finite and >= 0");
    return {{"family", rule.family_name()}, {"y", y}, {"p", rule(y)}};
}

EnvironmentClass class_from_params(const Params& p) {
    const auto it = p.find("class");
    if (it == p.end() || it->second == "general") return EnvironmentClass::general;
    if (it->second == "binary") return EnvironmentClass::binary;
    throw ValidationError("class must be 'binary' or 'general'");
}

RatioReport ratio_query(const Params& p, const GridOptions& grid) {
    const StoppingRule rule = rule_from_params(p);
    const CostModel cost = cost_from_params(p);
    const double x0 = require_number(p, "x0");
    const double xbar = find_number(p, "xbar").value_or(1.0);
    return performance_ratio(rule, x0, xbar, cost, class_from_params(p), grid);
}

json curve_snippet(const StoppingRule& rule, double y, double x0, double xbar,
                   const CostModel& cost) {
    constexpr int kPoints = 5;
    const double lo = std::max(x0, y / 2.0);
    const double hi = std::isfinite(xbar) ? std::min(xbar, 2.0 * y) : 2.0 * y;
    const GridOptions grid{.y_points = kPoints, .z_per_decade = 128};
    json out = json::array();
    for (int i = 0; i < kPoints; ++i) {
        const double t = static_cast<double>(i) / (kPoints - 1);
        const double yi = hi > lo ? lo * std::pow(hi / lo, t) : lo;
        out.push_back(point_to_json(pointwise_ratio(rule, yi, xbar, cost,
                                                    EnvironmentClass::general, grid)));
        if (!(hi > lo)) break;
    }
    return out;
}

}  // namespace robust_search::service
