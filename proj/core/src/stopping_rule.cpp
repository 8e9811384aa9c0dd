#include "robust_search/stopping_rule.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "robust_search/error.hpp"
#include "robust_search/rules.hpp"

namespace robust_search {
namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void check_delta(double delta) {
    if (!std::isfinite(delta) || !(delta > 0.0) || !(delta < 1.0)) {
        throw ValidationError("rule delta must lie in (0, 1), got " + std::to_string(delta));
    }
}

void check_probability(double p) {
    if (!std::isfinite(p) || p < 0.0 || p > 1.0) {
        throw ValidationError("stop probability must lie in [0, 1], got " + std::to_string(p));
    }
}

void check_positive(double v, const char* what) {
    if (!std::isfinite(v) || !(v > 0.0)) {
        throw ValidationError(std::string(what) + " must be finite and > 0, got " +
                              std::to_string(v));
    }
}

void check_bounded_pair(double x0, double xbar) {
    check_positive(x0, "x0");
    check_positive(xbar, "xbar");
    if (x0 > xbar) throw ValidationError("x0 must not exceed xbar");
}

}  // namespace

StoppingRule::StoppingRule(RuleFamily family) : family_(std::move(family)) {}

double StoppingRule::operator()(double y) const {
    return std::visit(
        overloaded{
            [](const Constant& r) { return r.q; },
            [y](const QStar& r) { return q_star(std::clamp(y / r.xbar, 0.0, 1.0), r.delta); },
            [](const BinaryRobust& r) { return binary_robust_rule(r.x0 / r.xbar, r.delta).q; },
            [y](const BoundedRobust& r) {
                const double target = binary_robust_ratio(r.x0 / r.xbar, r.delta);
                return bounded_robust_probability(y / r.xbar, target, r.delta);
            },
            [y](const Linear& r) {
                return std::min(constant_probability(r.delta) + r.alpha * y, 1.0);
            },
            [y](const Sqrt& r) {
                const double v = std::max(y, r.lower);
                if (v >= r.delta) return 1.0;
                return std::min(std::sqrt(r.beta * (1.0 - r.delta) * v / (1.0 - v)), 1.0);
            },
            [y](const Piecewise& r) {
                const auto it = std::upper_bound(r.knots.begin(), r.knots.end(), y);
                if (it == r.knots.begin()) return r.probs.front();
                return r.probs[static_cast<std::size_t>(it - r.knots.begin()) - 1];
            },
            [y](const Cutoff& r) { return y >= r.threshold ? 1.0 : 0.0; },
        },
        family_);
}

double StoppingRule::limit() const {
    return std::visit(
        overloaded{
            [](const Constant& r) { return r.q; },
            [](const QStar& r) { return q_star(1.0, r.delta); },
            [](const BinaryRobust& r) { return binary_robust_rule(r.x0 / r.xbar, r.delta).q; },
            [](const BoundedRobust&) { return 1.0; },
            [](const Linear& r) { return r.alpha > 0.0 ? 1.0 : constant_probability(r.delta); },
            [](const Sqrt&) { return 1.0; },
            [](const Piecewise& r) { return r.probs.back(); },
            [](const Cutoff& r) { return std::isinf(r.threshold) ? 0.0 : 1.0; },
        },
        family_);
}

std::string StoppingRule::family_name() const {
    return std::visit(overloaded{
                          [](const Constant&) { return "constant"; },
                          [](const QStar&) { return "qstar"; },
                          [](const BinaryRobust&) { return "binary_robust"; },
                          [](const BoundedRobust&) { return "bounded_robust"; },
                          [](const Linear&) { return "linear"; },
                          [](const Sqrt&) { return "sqrt"; },
                          [](const Piecewise&) { return "piecewise"; },
                          [](const Cutoff&) { return "cutoff"; },
                      },
                      family_);
}

bool StoppingRule::is_monotone() const {
    if (const auto* pw = std::get_if<Piecewise>(&family_)) {
        return std::is_sorted(pw->probs.begin(), pw->probs.end());
    }
    return true;
}

void validate(const StoppingRule& rule) {
    std::visit(overloaded{
                   [](const Constant& r) { check_probability(r.q); },
                   [](const QStar& r) {
                       check_positive(r.xbar, "xbar");
                       check_delta(r.delta);
                   },
                   [](const BinaryRobust& r) {
                       check_bounded_pair(r.x0, r.xbar);
                       check_delta(r.delta);
                   },
                   [](const BoundedRobust& r) {
                       check_bounded_pair(r.x0, r.xbar);
                       check_delta(r.delta);
                   },
                   [](const Linear& r) {
                       if (!std::isfinite(r.alpha) || r.alpha < 0.0) {
                           throw ValidationError("linear alpha must be finite and >= 0");
                       }
                       check_delta(r.delta);
                   },
                   [](const Sqrt& r) {
                       if (!std::isfinite(r.beta) || r.beta < 0.0) {
                           throw ValidationError("sqrt beta must be finite and >= 0");
                       }
                       check_delta(r.delta);
                       if (!(r.lower > 0.0) || !(r.lower < 1.0)) {
                           throw ValidationError("sqrt lower bound must lie in (0, 1)");
                       }
                   },
                   [](const Piecewise& r) {
                       if (r.knots.empty()) throw ValidationError("piecewise rule has no knots");
                       if (r.knots.size() != r.probs.size()) {
                           throw ValidationError("piecewise knots and probs differ in length");
                       }
                       for (std::size_t i = 0; i < r.knots.size(); ++i) {
                           if (!std::isfinite(r.knots[i])) {
                               throw ValidationError("piecewise knots must be finite");
                           }
                           if (i > 0 && !(r.knots[i] > r.knots[i - 1])) {
                               throw ValidationError("piecewise knots must be strictly ascending");
                           }
                           check_probability(r.probs[i]);
                       }
                   },
                   [](const Cutoff& r) {
                       if (std::isnan(r.threshold)) throw ValidationError("cutoff is NaN");
                   },
               },
               rule.family());
}

void require_monotone(const StoppingRule& rule) {
    validate(rule);
    if (!rule.is_monotone()) {
        throw ValidationError("rule must be nondecreasing in the best-so-far value");
    }
}

}  // namespace robust_search
