#pragma once

#include <vector>

#include "robust_search/cost_model.hpp"
#include "robust_search/stopping_rule.hpp"
#include "robust_search/verifier.hpp"

namespace robust_search::detail {

/// Prize values z on which waiting can be optimal at y, with the rule's
/// payoff once z is in hand.
struct ZTable {
    std::vector<double> z;
    std::vector<double> uz;
};

ZTable z_table(const StoppingRule& rule, double y, double z_hi, const CostModel& cost,
               EnvironmentClass cls, int per_decade);

/// Ratio at y when the rule stops with probability s there; `limit` is the
/// unbounded-prize term or +inf. Ties within `tie` prefer the wait scenario,
/// then larger z, then the limit.
PointRatio evaluate_point(double s, double y, const ZTable& table, const CostModel& cost,
                          double limit, double tie);

/// Value-only version of evaluate_point without the limit term.
double min_ratio(double s, double y, const ZTable& table, const CostModel& cost);

/// Unbounded-prize term for stop probability s.
double unbounded_limit(const StoppingRule& rule, double s, const CostModel& cost,
                       EnvironmentClass cls);

}  // namespace robust_search::detail
