#include "robust_search/payoff.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "robust_search/error.hpp"
#include "wait_scenario.hpp"

namespace robust_search {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double stay_value(double p, double v, const CostModel& cost) {
    return detail::stay_value(p, v, cost.delta, cost.kappa);
}

double g(double c, const Discrete& d, const CostModel& cost) {
    double e = 0.0;
    for (std::size_t i = 0; i < d.support.size(); ++i) e += d.probs[i] * std::max(c, d.support[i]);
    return c - cost.delta * (e - cost.kappa);
}

double reservation_discrete(const Discrete& d, const CostModel& cost) {
    const auto& x = d.support;
    const double delta = cost.delta;
    if (g(x.front(), d, cost) > 0.0) {
        double m = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) m += d.probs[i] * x[i];
        return delta * (m - cost.kappa);
    }
    // g is nondecreasing; find the last support point with g <= 0.
    std::size_t lo = 0;
    std::size_t hi = x.size();
    while (hi - lo > 1) {
        const std::size_t mid = lo + (hi - lo) / 2;
        if (g(x[mid], d, cost) <= 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    if (lo + 1 == x.size()) return x.back();  // g(max) = 0 only when max = 0 and kappa = 0
    // On [x_lo, x_lo+1] g is linear: c (1 - delta F) - delta (T - kappa).
    double below = 0.0;
    double above = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (i <= lo) {
            below += d.probs[i];
        } else {
            above += d.probs[i] * x[i];
        }
    }
    const double c = delta * (above - cost.kappa) / (1.0 - delta * below);
    return std::clamp(c, x[lo], x[lo + 1]);
}

}  // namespace

double reservation_value(const PureEnvironment& env, const CostModel& cost) {
    cost.validate();
    validate(env);
    const double delta = cost.delta;
    const double kappa = cost.kappa;
    if (const auto* b = std::get_if<Binary>(&env)) {
        const double c1 = delta * (b->sigma * b->z - kappa);
        if (c1 <= 0.0) return c1;
        return delta * (b->sigma * b->z - kappa) / (1.0 - delta * (1.0 - b->sigma));
    }
    if (const auto* t = std::get_if<TwoPoint>(&env)) {
        const double c1 = delta * (t->sigma * t->z + (1.0 - t->sigma) * t->w - kappa);
        if (c1 <= t->w) return c1;
        return delta * (t->sigma * t->z - kappa) / (1.0 - delta * (1.0 - t->sigma));
    }
    return reservation_discrete(std::get<Discrete>(env), cost);
}

double optimal_value(const PureEnvironment& env, double y, const CostModel& cost) {
    if (!(y >= 0.0)) throw ValidationError("best-so-far value must be >= 0");
    return std::max(y, reservation_value(env, cost));
}

double rule_value_binary(const StoppingRule& rule, const Binary& env, double y,
                         const CostModel& cost) {
    cost.validate();
    validate(env);
    if (!(y >= 0.0)) throw ValidationError("best-so-far value must be >= 0");
    const double p = rule(y);
    if (p >= 1.0) return y;
    if (env.z <= y || env.sigma == 0.0) return stay_value(p, y, cost);
    const double uz = stay_value(rule(env.z), env.z, cost);
    if (uz == kNegInf) return kNegInf;
    const double delta = cost.delta;
    const double num = p * y + (1.0 - p) * delta * (env.sigma * uz - cost.kappa);
    const double den = 1.0 - delta * (1.0 - p) * (1.0 - env.sigma);
    return num / den;
}

double rule_value_discrete(const StoppingRule& rule, const Discrete& env, double y,
                           const CostModel& cost) {
    cost.validate();
    validate(env);
    if (!(y >= 0.0)) throw ValidationError("best-so-far value must be >= 0");

    // Levels the best-so-far value can visit, highest first.
    std::vector<std::size_t> upper;
    for (std::size_t i = env.support.size(); i-- > 0;) {
        if (env.support[i] > y && env.probs[i] > 0.0) upper.push_back(i);
    }
    const double delta = cost.delta;
    std::vector<double> u(env.support.size(), 0.0);

    auto level = [&](double v, std::size_t n_above) {
        const double p = rule(v);
        if (p >= 1.0) return v;
        double below = 1.0;  // P(X <= v)
        double cont = -cost.kappa;
        for (std::size_t k = 0; k < n_above; ++k) {
            const std::size_t j = upper[k];
            below -= env.probs[j];
            if (u[j] == kNegInf) return kNegInf;
            cont += env.probs[j] * u[j];
        }
        below = std::max(below, 0.0);
        const double num = p * v + (1.0 - p) * delta * cont;
        const double den = 1.0 - (1.0 - p) * delta * below;
        if (den <= 0.0) return num < 0.0 ? kNegInf : v;
        return num / den;
    };

    for (std::size_t k = 0; k < upper.size(); ++k) {
        u[upper[k]] = level(env.support[upper[k]], k);
    }
    return level(y, upper.size());
}

double rule_value(const StoppingRule& rule, const PureEnvironment& env, double y,
                  const CostModel& cost) {
    if (const auto* b = std::get_if<Binary>(&env)) return rule_value_binary(rule, *b, y, cost);
    return rule_value_discrete(rule, to_discrete(env), y, cost);
}

}  // namespace robust_search
