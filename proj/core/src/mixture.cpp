#include <algorithm>
#include <cmath>
#include <limits>

#include "robust_search/error.hpp"
#include "robust_search/payoff.hpp"

namespace robust_search {

double mixture_rule_value(const StoppingRule& rule, const Mixture& mix, double y,
                          const CostModel& cost) {
    validate(mix);
    double total = 0.0;
    for (std::size_t i = 0; i < mix.components.size(); ++i) {
        if (mix.weights[i] == 0.0) continue;
        total += mix.weights[i] * rule_value(rule, mix.components[i], y, cost);
    }
    return total;
}

double mixture_optimal_value(const Mixture& mix, double y, const CostModel& cost,
                             double horizon_eps) {
    cost.validate();
    validate(mix);
    if (!(y >= 0.0)) throw ValidationError("best-so-far value must be >= 0");
    if (!(horizon_eps > 0.0)) throw ValidationError("horizon_eps must be > 0");
    if (!(cost.delta < 1.0)) throw UnsupportedError("mixture oracle needs delta < 1");

    const std::size_t n = mix.components.size();
    std::vector<Binary> comps;
    comps.reserve(n);
    for (const auto& c : mix.components) {
        const auto* b = std::get_if<Binary>(&c);
        if (b == nullptr) {
            throw UnsupportedError("mixture oracle supports binary components only");
        }
        // A prize of 0 is indistinguishable from the low outcome.
        comps.push_back(b->z > 0.0 ? *b : Binary{0.0, 0.0});
    }

    double scale = y;
    for (const auto& b : comps) scale = std::max(scale, b.z);
    if (scale <= 0.0) return std::max(y, -cost.delta * cost.kappa / (1.0 - cost.delta));
    const double delta = cost.delta;
    const long horizon = std::max(
        1L, static_cast<long>(std::ceil(std::log(horizon_eps * (1.0 - delta) / scale) /
                                        std::log(delta))));

    // Belief after t zeros, in log space so long zero streaks do not underflow.
    std::vector<double> log_w(n);
    std::vector<double> log_zero(n);
    for (std::size_t i = 0; i < n; ++i) {
        log_w[i] = mix.weights[i] > 0.0 ? std::log(mix.weights[i])
                                        : -std::numeric_limits<double>::infinity();
        log_zero[i] = comps[i].sigma < 1.0 ? std::log1p(-comps[i].sigma)
                                           : -std::numeric_limits<double>::infinity();
    }
    std::vector<double> belief(n);
    auto posterior = [&](long t) {
        double top = -std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < n; ++i) {
            belief[i] = log_w[i] + (log_zero[i] == -std::numeric_limits<double>::infinity()
                                        ? (t == 0 ? 0.0 : log_zero[i])
                                        : static_cast<double>(t) * log_zero[i]);
            top = std::max(top, belief[i]);
        }
        if (top == -std::numeric_limits<double>::infinity()) return false;
        double sum = 0.0;
        for (double& b : belief) {
            b = std::exp(b - top);
            sum += b;
        }
        for (double& b : belief) b /= sum;
        return true;
    };

    // After any nonzero draw only components with that single prize remain,
    // so nothing better can arrive and stopping is optimal.
    double next = y;
    for (long t = horizon - 1; t >= 0; --t) {
        if (!posterior(t)) {
            next = y;
            continue;
        }
        double prize = 0.0;
        double zero = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            prize += belief[i] * comps[i].sigma * std::max(y, comps[i].z);
            zero += belief[i] * (1.0 - comps[i].sigma);
        }
        next = std::max(y, delta * (prize + zero * next - cost.kappa));
    }
    return next;
}

}  // namespace robust_search
