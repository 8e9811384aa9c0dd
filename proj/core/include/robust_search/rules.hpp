#pragma once

#include <iosfwd>
#include <vector>

#include "robust_search/cost_model.hpp"
#include "robust_search/stopping_rule.hpp"

namespace robust_search {

/// (1 - delta) / (2 - delta). Rejects delta = 1.
[[nodiscard]] StoppingRule constant_rule(const CostModel& cost);
[[nodiscard]] double constant_probability(double delta);

[[nodiscard]] double q_star(double x, double delta);
[[nodiscard]] double rho(double x);

struct BinaryRobustSolution {
    double q = 0.0;
    double sigma = 0.0;
};

/// Maximin stop probability and worst-case high-prize probability for
/// binary environments, x_hat = x0 / xbar in (0, 1].
[[nodiscard]] BinaryRobustSolution binary_robust_rule(double x_hat, double delta);
[[nodiscard]] double binary_robust_ratio(double x_hat, double delta);

/// Boundaries between the three regimes of the binary robust rule.
[[nodiscard]] inline double binary_lower_boundary(double delta) {
    return delta * delta / (2.0 - delta);
}

[[nodiscard]] StoppingRule pstar_rule(double xbar, double delta);
[[nodiscard]] StoppingRule linear_rule(double alpha, double delta);
[[nodiscard]] StoppingRule sqrt_rule(double beta, double delta, double lower = 1.0 / 89.0);
[[nodiscard]] StoppingRule bounded_robust_rule(double x0, double xbar, double delta);

/// Stop probability of the bounded robust rule at y / xbar = y, for target
/// ratio r. Exposed for tests and for the rule evaluator.
[[nodiscard]] double bounded_robust_probability(double y, double r, double delta);

struct DerivedRule {
    StoppingRule rule;   // Piecewise
    double x0 = 0.0;     // lowest grid point with a feasible stop probability
    double target = 0.0;
    int intervals = 0;   // geometric intervals visited below [delta, 1]
};

struct DeriveOptions {
    int grid = 256;              // cells per interval [delta^{k+1}, delta^k)
    int z_per_decade = 512;
    int max_intervals = 100000;
};

/// Builds a rule on X = [0, 1] that guarantees ratio `r` from x0(r) upward
/// by descending through the intervals [delta^{k+1}, delta^k).
[[nodiscard]] DerivedRule derive_rule(double r, double delta, const DeriveOptions& opts = {});

/// Writes the step table as CSV with header y_lo,y_hi,p.
void write_rule_csv(std::ostream& out, const DerivedRule& derived, int precision = 6);

struct CalibrationOptions {
    double x0_low = 1.0 / 89.0;
    int x0_points = 400;
    int coarse_points = 24;
    double tolerance = 1e-4;
    int z_per_decade = 512;
};

struct CalibrationResult {
    double param = 0.0;
    double loss = 0.0;
};

/// Loss of a rule: max over the x0 grid of R*(x0) minus the rule's ratio.
[[nodiscard]] double performance_loss(const StoppingRule& rule, double delta,
                                      const CalibrationOptions& opts = {});

[[nodiscard]] CalibrationResult calibrate_linear(double delta, const CalibrationOptions& opts = {});
[[nodiscard]] CalibrationResult calibrate_sqrt(double delta, const CalibrationOptions& opts = {});

}  // namespace robust_search
