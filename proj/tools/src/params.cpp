#include "robust_search/service/params.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>

#include "robust_search/error.hpp"
#include "robust_search/json_codec.hpp"
#include "robust_search/rules.hpp"

namespace robust_search::service {
namespace {

using nlohmann::json;

std::vector<double> parse_list(std::string_view text, std::string_view what) {
    std::vector<double> out;
    std::string item;
    std::istringstream in{std::string(text)};
    while (std::getline(in, item, ',')) out.push_back(parse_number(item, what));
    return out;
}

double get_or(const Params& p, std::string_view key, double fallback) {
    return find_number(p, key).value_or(fallback);
}

}  // namespace

double parse_number(std::string_view text, std::string_view what) {
    const std::string s(text);
    if (s.empty()) throw ValidationError(std::string(what) + ": empty number");
    char* end = nullptr;
    errno = 0;
    const double v = std::strtod(s.c_str(), &end);
    if (end != s.c_str() + s.size() || errno == ERANGE || std::isnan(v)) {
        throw ValidationError(std::string(what) + ": not a number: '" + s + "'");
    }
    return v;
}

std::optional<double> find_number(const Params& p, std::string_view key) {
    const auto it = p.find(key);
    if (it == p.end()) return std::nullopt;
    return parse_number(it->second, key);
}

double require_number(const Params& p, std::string_view key) {
    const auto v = find_number(p, key);
    if (!v) throw ValidationError("missing parameter '" + std::string(key) + "'");
    return *v;
}

CostModel cost_from_params(const Params& p) {
    CostModel c{require_number(p, "delta"), get_or(p, "kappa", 0.0)};
    c.validate();
    return c;
}

StoppingRule rule_from_params(const Params& p) {
    if (const auto it = p.find("rule"); it != p.end() && !it->second.empty() &&
                                        it->second.front() == '{') {
        json j;
        try {
            j = json::parse(it->second);
        } catch (const json::parse_error&) {
            throw ValidationError("rule: malformed JSON");
        }
        return rule_from_json(j);
    }
    std::string family;
    if (const auto it = p.find("family"); it != p.end()) family = it->second;
    if (const auto it = p.find("rule"); family.empty() && it != p.end()) family = it->second;
    if (family.empty()) throw ValidationError("missing rule family");

    StoppingRule rule;
    if (family == "constant") {
        const auto q = find_number(p, "q");
        rule = Constant{q ? *q : constant_probability(require_number(p, "delta"))};
    } else if (family == "qstar" || family == "pstar") {
        rule = QStar{get_or(p, "xbar", 1.0), require_number(p, "delta")};
    } else if (family == "binary_robust") {
        rule = BinaryRobust{require_number(p, "x0"), get_or(p, "xbar", 1.0),
                            require_number(p, "delta")};
    } else if (family == "bounded_robust") {
        rule = BoundedRobust{require_number(p, "x0"), get_or(p, "xbar", 1.0),
                             require_number(p, "delta")};
    } else if (family == "linear") {
        rule = Linear{require_number(p, "alpha"), require_number(p, "delta")};
    } else if (family == "sqrt") {
        rule = Sqrt{require_number(p, "beta"), require_number(p, "delta"),
                    get_or(p, "lower", 1.0 / 89.0)};
    } else if (family == "cutoff") {
        rule = Cutoff{require_number(p, "threshold")};
    } else if (family == "piecewise") {
        const auto k = p.find("knots");
        const auto q = p.find("probs");
        if (k == p.end() || q == p.end()) {
            throw ValidationError("piecewise rule needs knots and probs");
        }
        rule = Piecewise{parse_list(k->second, "knots"), parse_list(q->second, "probs")};
    } else {
        throw ValidationError("unknown rule family '" + family + "'");
    }
    validate(rule);
    return rule;
}

StoppingRule rule_from_value(const json& value, const json& context) {
    if (value.is_object()) return rule_from_json(value);
    if (!value.is_string()) throw ValidationError("rule must be a family name or an object");
    Params p{{"family", value.get<std::string>()}};
    if (context.is_object()) {
        for (const auto& [key, v] : context.items()) {
            if (v.is_number()) {
                p[key] = format_number(v.get<double>(), 17);
            } else if (v.is_string() && key != "rule") {
                p[key] = v.get<std::string>();
            }
        }
    }
    return rule_from_params(p);
}

std::string format_number(double v, int precision) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", precision, v);
    return buf;
}

json round_json(const json& j, int precision) {
    if (j.is_number_float()) {
        return std::strtod(format_number(j.get<double>(), precision).c_str(), nullptr);
    }
    if (j.is_array() || j.is_object()) {
        json out = j;
        for (auto& v : out) v = round_json(v, precision);
        return out;
    }
    return j;
}

int checked_precision(int precision) {
    if (precision < 1 || precision > 15) {
        throw ValidationError("precision must lie in [1, 15]");
    }
    return precision;
}

}  // namespace robust_search::service
