#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "robust_search/cost_model.hpp"
#include "robust_search/stopping_rule.hpp"

namespace robust_search::service {

/// Flat key/value parameters as they arrive from a command line or a query
/// string.
using Params = std::map<std::string, std::string, std::less<>>;

/// Parses a decimal number; accepts "inf". Throws ValidationError naming `what`.
[[nodiscard]] double parse_number(std::string_view text, std::string_view what);

[[nodiscard]] std::optional<double> find_number(const Params& p, std::string_view key);
[[nodiscard]] double require_number(const Params& p, std::string_view key);

/// Builds a rule from `family` plus its parameters. `rule` may instead hold
/// a full JSON rule. Missing parameters fall back to the session-style
/// defaults: xbar = 1, constant q = (1 - delta) / (2 - delta).
[[nodiscard]] StoppingRule rule_from_params(const Params& p);

/// Same, from a JSON value: a family name string plus fields in `context`,
/// or a full rule object.
[[nodiscard]] StoppingRule rule_from_value(const nlohmann::json& value,
                                           const nlohmann::json& context);

[[nodiscard]] CostModel cost_from_params(const Params& p);

/// `precision` significant digits, shortest form ("0.75", "inf").
[[nodiscard]] std::string format_number(double v, int precision);

/// Rounds every number in a JSON tree to `precision` significant digits.
[[nodiscard]] nlohmann::json round_json(const nlohmann::json& j, int precision);

[[nodiscard]] int checked_precision(int precision);

}  // namespace robust_search::service
