#pragma once

#include "robust_search/cost_model.hpp"
#include "robust_search/environment.hpp"
#include "robust_search/stopping_rule.hpp"

namespace robust_search {

/// Unique c with c = delta * (E[max{c, X}] - kappa).
[[nodiscard]] double reservation_value(const PureEnvironment& env, const CostModel& cost);

/// max{y, c_F}: the payoff of optimal play from best-so-far y.
[[nodiscard]] double optimal_value(const PureEnvironment& env, double y, const CostModel& cost);

/// Payoff of a stationary rule in a binary environment from best-so-far y.
/// Returns -inf when the rule never stops and every round costs kappa with
/// no discounting.
[[nodiscard]] double rule_value_binary(const StoppingRule& rule, const Binary& env, double y,
                                       const CostModel& cost);

/// Same payoff for any finite-support environment, solved level by level
/// from the top of the support down.
[[nodiscard]] double rule_value_discrete(const StoppingRule& rule, const Discrete& env, double y,
                                         const CostModel& cost);

/// Dispatches on the environment type.
[[nodiscard]] double rule_value(const StoppingRule& rule, const PureEnvironment& env, double y,
                                const CostModel& cost);

/// Payoff of a fixed rule under a prior: the weighted component payoffs.
[[nodiscard]] double mixture_rule_value(const StoppingRule& rule, const Mixture& mix, double y,
                                        const CostModel& cost);

/// Bayesian optimal payoff under a prior over binary environments, found by
/// backward induction on the number of consecutive zeros. Accurate to
/// `horizon_eps`. Non-binary components raise UnsupportedError.
[[nodiscard]] double mixture_optimal_value(const Mixture& mix, double y, const CostModel& cost,
                                           double horizon_eps = 1e-10);

}  // namespace robust_search
