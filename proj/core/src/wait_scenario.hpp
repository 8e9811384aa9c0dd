#pragma once

#include <functional>

// Closed-form building blocks of the payoff ratio over lotteries {0, z}.
// Internal to the library.

namespace robust_search::detail {

/// Payoff of stopping with probability p at v when nothing better arrives.
double stay_value(double p, double v, double delta, double kappa);

/// stay_value(p, y) / y: the ratio when waiting is not worthwhile.
double stop_ratio(double p, double y, double delta, double kappa);

/// sigma from which waiting for z beats stopping at y.
double wait_threshold(double y, double z, double delta, double kappa);

struct SigmaMin {
    double value = 0.0;
    double sigma = 0.0;
    bool feasible = false;  // false when no sigma in [0, 1] makes waiting optimal
};

/// min over sigma of U / V for the lottery {0, z} when waiting is optimal.
/// s is the stop probability at y, uz the rule's payoff once z is in hand.
SigmaMin wait_min(double s, double y, double z, double uz, double delta, double kappa);

/// The z -> infinity limit of the wait ratio, minimized over sigma.
double limit_ratio(double s, double w_inf, double delta);

/// Largest s in [0, 1] with ratio(s) >= target, given that ratio is
/// quasiconcave and infeasible below s_start. Returns a negative value when
/// no s qualifies.
double largest_feasible(const std::function<double(double)>& ratio, double target,
                        double s_start, double tol = 1e-12);

}  // namespace robust_search::detail
