#pragma once

#include <nlohmann/json.hpp>

#include "robust_search/service/params.hpp"
#include "robust_search/verifier.hpp"

namespace robust_search::service {

// Stateless queries shared by the CLI and the HTTP service, so both produce
// the same numbers for the same parameters.

/// Flattens a JSON object body into Params. Objects are kept as JSON text.
[[nodiscard]] Params params_from_json(const nlohmann::json& body);

/// {"family", "y", "p"} for the rule described by `p` evaluated at p["y"].
[[nodiscard]] nlohmann::json rule_eval(const Params& p);

[[nodiscard]] EnvironmentClass class_from_params(const Params& p);

/// Performance ratio of the rule in `p` (keys: x0, xbar, delta, kappa, class).
[[nodiscard]] RatioReport ratio_query(const Params& p, const GridOptions& grid);

/// Worst-case pointwise ratios at a few best-so-far values around `y`.
[[nodiscard]] nlohmann::json curve_snippet(const StoppingRule& rule, double y, double x0,
                                           double xbar, const CostModel& cost);

}  // namespace robust_search::service
