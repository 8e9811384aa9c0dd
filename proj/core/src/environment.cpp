#include "robust_search/environment.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "robust_search/error.hpp"

namespace robust_search {
namespace {

void check_probability(double p, const char* what) {
    if (!std::isfinite(p) || p < 0.0 || p > 1.0) {
        throw ValidationError(std::string(what) + " must lie in [0, 1], got " + std::to_string(p));
    }
}

void check_value(double v, const char* what) {
    if (!std::isfinite(v) || v < 0.0) {
        throw ValidationError(std::string(what) + " must be finite and >= 0, got " +
                              std::to_string(v));
    }
}

void check_sum(const std::vector<double>& ps, const char* what) {
    double sum = 0.0;
    for (double p : ps) {
        check_probability(p, what);
        sum += p;
    }
    if (std::abs(sum - 1.0) > kProbabilityTolerance * std::max<std::size_t>(1, ps.size())) {
        throw ValidationError(std::string(what) + " must sum to 1, got " + std::to_string(sum));
    }
}

}  // namespace

void validate(const Binary& env) {
    check_value(env.z, "binary z");
    check_probability(env.sigma, "binary sigma");
}

void validate(const TwoPoint& env) {
    check_value(env.w, "two-point w");
    check_value(env.z, "two-point z");
    if (env.w > env.z) throw ValidationError("two-point environment needs w <= z");
    check_probability(env.sigma, "two-point sigma");
}

void validate(const Discrete& env) {
    if (env.support.empty()) throw ValidationError("discrete support is empty");
    if (env.support.size() != env.probs.size()) {
        throw ValidationError("discrete support and probs differ in length");
    }
    for (std::size_t i = 0; i < env.support.size(); ++i) {
        check_value(env.support[i], "support value");
        if (i > 0 && !(env.support[i] > env.support[i - 1])) {
            throw ValidationError("discrete support must be strictly ascending");
        }
    }
    check_sum(env.probs, "discrete probs");
}

void validate(const PureEnvironment& env) {
    std::visit([](const auto& e) { validate(e); }, env);
}

void validate(const Mixture& env) {
    if (env.components.empty()) throw ValidationError("mixture has no components");
    if (env.components.size() != env.weights.size()) {
        throw ValidationError("mixture components and weights differ in length");
    }
    for (const auto& c : env.components) validate(c);
    check_sum(env.weights, "mixture weights");
}

void validate(const Environment& env) {
    std::visit([](const auto& e) { validate(e); }, env);
}

Discrete to_discrete(const PureEnvironment& env) {
    validate(env);
    std::vector<std::pair<double, double>> atoms;
    if (const auto* b = std::get_if<Binary>(&env)) {
        atoms = {{0.0, 1.0 - b->sigma}, {b->z, b->sigma}};
    } else if (const auto* t = std::get_if<TwoPoint>(&env)) {
        atoms = {{t->w, 1.0 - t->sigma}, {t->z, t->sigma}};
    } else {
        return std::get<Discrete>(env);
    }
    Discrete out;
    for (const auto& [x, p] : atoms) {
        if (!out.support.empty() && out.support.back() == x) {
            out.probs.back() += p;
        } else {
            out.support.push_back(x);
            out.probs.push_back(p);
        }
    }
    return out;
}

double mean(const PureEnvironment& env) {
    const Discrete d = to_discrete(env);
    double m = 0.0;
    for (std::size_t i = 0; i < d.support.size(); ++i) m += d.support[i] * d.probs[i];
    return m;
}

double max_value(const PureEnvironment& env) {
    const Discrete d = to_discrete(env);
    for (std::size_t i = d.support.size(); i-- > 0;) {
        if (d.probs[i] > 0.0) return d.support[i];
    }
    return d.support.front();
}

PureEnvironment as_pure(const Environment& env) {
    return std::visit(
        [](const auto& e) -> PureEnvironment {
            using T = std::decay_t<decltype(e)>;
            if constexpr (std::is_same_v<T, Mixture>) {
                throw ValidationError("expected a single environment, got a mixture");
            } else {
                return e;
            }
        },
        env);
}

}  // namespace robust_search
