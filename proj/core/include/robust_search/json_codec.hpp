#pragma once

#include <nlohmann/json.hpp>

#include "robust_search/cost_model.hpp"
#include "robust_search/environment.hpp"
#include "robust_search/simulator.hpp"
#include "robust_search/stopping_rule.hpp"
#include "robust_search/verifier.hpp"

namespace robust_search {

// Non-finite numbers are written as the strings "inf", "-inf" and "nan" and
// read back the same way. Malformed input raises ValidationError.

[[nodiscard]] nlohmann::json number_to_json(double v);
[[nodiscard]] double number_from_json(const nlohmann::json& j);

void to_json(nlohmann::json& j, const CostModel& c);
void from_json(const nlohmann::json& j, CostModel& c);

[[nodiscard]] nlohmann::json environment_to_json(const Environment& env);
[[nodiscard]] Environment environment_from_json(const nlohmann::json& j);
[[nodiscard]] nlohmann::json environment_to_json(const PureEnvironment& env);

[[nodiscard]] nlohmann::json rule_to_json(const StoppingRule& rule);
[[nodiscard]] StoppingRule rule_from_json(const nlohmann::json& j);

[[nodiscard]] nlohmann::json point_to_json(const PointRatio& p);
[[nodiscard]] nlohmann::json report_to_json(const RatioReport& r, bool with_curve = true);
[[nodiscard]] nlohmann::json twopoint_to_json(const TwoPointReport& r);
[[nodiscard]] nlohmann::json estimate_to_json(const Estimate& e);

}  // namespace robust_search
