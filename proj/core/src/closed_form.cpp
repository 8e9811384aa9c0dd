#include <algorithm>
#include <cmath>
#include <string>

#include "robust_search/error.hpp"
#include "robust_search/rules.hpp"
#include "wait_scenario.hpp"

namespace robust_search {
namespace {

void check_delta(double delta) {
    if (!std::isfinite(delta) || !(delta > 0.0) || !(delta < 1.0)) {
        throw ValidationError("delta must lie in (0, 1), got " + std::to_string(delta));
    }
}

void check_unit(double x, const char* what) {
    if (!std::isfinite(x) || x < 0.0 || x > 1.0) {
        throw ValidationError(std::string(what) + " must lie in [0, 1], got " + std::to_string(x));
    }
}

void check_x_hat(double x_hat) {
    if (!std::isfinite(x_hat) || !(x_hat > 0.0) || x_hat > 1.0) {
        throw ValidationError("x0 / xbar must lie in (0, 1], got " + std::to_string(x_hat));
    }
}

// Shared root of the middle regime.
double middle_root(double x, double delta) {
    const double u = 2.0 * delta - x;
    return std::sqrt((1.0 - delta) * (u * u - delta * x * x));
}

// Ratio of stopping with probability q at y over lotteries {0, 1} on which
// waiting is optimal. p(1) = 1, so the prize is worth exactly 1 once in hand.
double unit_wait_ratio(double q, double y, double delta) {
    return detail::wait_min(q, y, 1.0, 1.0, delta, 0.0).value;
}

}  // namespace

double constant_probability(double delta) {
    check_delta(delta);
    return (1.0 - delta) / (2.0 - delta);
}

StoppingRule constant_rule(const CostModel& cost) {
    cost.validate();
    if (!(cost.delta < 1.0)) {
        throw ConfigError(
            "constant rule needs delta < 1: (1 - delta) / (2 - delta) vanishes at delta = 1 "
            "and no ratio is certified for pure additive cost");
    }
    return Constant{constant_probability(cost.delta)};
}

double q_star(double x, double delta) {
    check_unit(x, "x");
    check_delta(delta);
    return 2.0 * (1.0 - delta) / (4.0 - 2.0 * delta + x - std::sqrt(x * (x + 8.0)));
}

double rho(double x) {
    check_unit(x, "x");
    return 0.5 + 0.125 * (x + std::sqrt(x * (x + 8.0)));
}

BinaryRobustSolution binary_robust_rule(double x_hat, double delta) {
    check_x_hat(x_hat);
    check_delta(delta);
    if (x_hat <= binary_lower_boundary(delta)) {
        const double sigma = (1.0 - delta) * (3.0 * x_hat + std::sqrt(x_hat * (x_hat + 8.0))) /
                             (2.0 * delta * (1.0 - x_hat));
        return {q_star(x_hat, delta), sigma};
    }
    if (x_hat >= delta) return {1.0, 1.0};
    // Rationalized form; equal to the difference-of-roots expression but
    // without cancellation as x_hat approaches delta.
    const double a = middle_root(x_hat, delta);
    const double b = (1.0 - delta) * (2.0 * delta - x_hat);
    return {std::min(1.0, 2.0 * delta * (1.0 - delta) / (a + b)), 1.0};
}

double binary_robust_ratio(double x_hat, double delta) {
    check_x_hat(x_hat);
    check_delta(delta);
    if (x_hat <= binary_lower_boundary(delta)) return rho(x_hat);
    if (x_hat >= delta) return 1.0;
    const double a = middle_root(x_hat, delta);
    return std::min(1.0, (2.0 * delta - (1.0 - delta) * x_hat - a) / (2.0 * delta * delta));
}

StoppingRule pstar_rule(double xbar, double delta) {
    StoppingRule rule = QStar{xbar, delta};
    validate(rule);
    return rule;
}

StoppingRule linear_rule(double alpha, double delta) {
    StoppingRule rule = Linear{alpha, delta};
    validate(rule);
    return rule;
}

StoppingRule sqrt_rule(double beta, double delta, double lower) {
    StoppingRule rule = Sqrt{beta, delta, lower};
    validate(rule);
    return rule;
}

StoppingRule bounded_robust_rule(double x0, double xbar, double delta) {
    StoppingRule rule = BoundedRobust{x0, xbar, delta};
    validate(rule);
    return rule;
}

double bounded_robust_probability(double y, double r, double delta) {
    if (y >= delta * r) return 1.0;
    if (!(y > 0.0)) return 0.0;

    // Two closed-form candidates: sigma~ interior, and sigma~ = 1. Which one
    // applies switches where the interior sigma~ reaches 1, so both are
    // tried and the largest one meeting the target is kept.
    const double tol = 1e-12;
    auto feasible = [&](double q) {
        if (!(q >= 0.0 && q <= 1.0)) return false;
        return detail::stop_ratio(q, y, delta, 0.0) >= r - tol &&
               unit_wait_ratio(q, y, delta) >= r - tol;
    };

    double best = -1.0;
    const double s = std::sqrt(y * r);
    const double num = (1.0 - delta) * (1.0 - r) * (y + s) * (r + s);
    const double den = (1.0 - delta) * (1.0 - r) * 2.0 * y * r +
                       (delta * r * r + ((1.0 - delta + y) * y + (1.0 - delta - (3.0 - delta) * y) * r)) * s;
    if (den > 0.0) {
        const double q1 = std::min(num / den, 1.0);
        if (feasible(q1)) best = q1;
    }
    const double q2 = std::min(delta * (1.0 - r) / (delta - y), 1.0);
    if (feasible(q2)) best = std::max(best, q2);
    if (best >= 0.0) return best;

    const double start = r * (1.0 - delta) / (1.0 - delta * r);
    const double q = detail::largest_feasible(
        [&](double v) {
            return std::min(detail::stop_ratio(v, y, delta, 0.0), unit_wait_ratio(v, y, delta));
        },
        r, start);
    return std::max(q, 0.0);
}

}  // namespace robust_search
