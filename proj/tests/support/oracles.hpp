#pragma once

// Reference implementations used only by tests. They share no code with the
// library beyond evaluating p(y), and favor brute force over speed.

#include <cstdint>
#include <vector>

#include "robust_search/stopping_rule.hpp"

namespace oracle {

struct Lottery {
    std::vector<double> values;
    std::vector<double> probs;
};

/// Solves c = delta (E max{c, X} - kappa) by bisection.
double reservation_value(const Lottery& f, double delta, double kappa);

/// Rule payoff from best-so-far y by value iteration over the reachable
/// best-so-far levels. With `stop_on_top` the searcher stops as soon as the
/// top of the support arrives.
double rule_value(const robust_search::StoppingRule& rule, const Lottery& f, double y,
                  double delta, double kappa, bool stop_on_top = false);

struct GridRatio {
    double ratio;
    double z;
    double sigma;
};

/// min U/V over lotteries {0, z} with z on a geometric grid in (y, z_hi] and
/// sigma on a uniform grid in [0, 1], evaluated by value iteration.
GridRatio grid_pointwise_ratio(const robust_search::StoppingRule& rule, double y, double z_hi,
                               double delta, double kappa, bool binary_class, int z_points,
                               int sigma_points);

struct Maximin {
    double q;
    double ratio;
};

/// max over q of min over sigma of the stationary binary-environment payoff
/// ratio at x_hat = x0 / xbar, by nested grid search with local refinement.
Maximin binary_maximin(double x_hat, double delta);

/// Bayesian optimal payoff under a prior over {0, z_i} lotteries by backward
/// induction over a long horizon in plain probability space.
double mixture_optimal_value(const std::vector<double>& z, const std::vector<double>& sigma,
                             const std::vector<double>& weights, double y, double delta,
                             double kappa, int horizon = 20000);

/// x0 / sup over environments on [0, xbar] of the optimal payoff.
double deterministic_bound(double x0, double xbar, double delta, double kappa);

/// Small deterministic generator so property tests do not depend on the
/// standard library's distribution implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}
    double uniform();
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    /// Log-uniform in [lo, hi].
    double log_uniform(double lo, double hi);
    int integer(int lo, int hi);

private:
    std::uint64_t state_;
};

}  // namespace oracle
