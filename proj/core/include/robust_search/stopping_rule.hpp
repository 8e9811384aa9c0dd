#pragma once

#include <limits>
#include <string>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

namespace robust_search {

/// Stop with the same probability whatever the best-so-far value.
struct Constant {
    double q = 0.0;
};

/// p(y) = q*(y / xbar) with y / xbar clamped to [0, 1].
struct QStar {
    double xbar = 1.0;
    double delta = 0.9;
};

/// The constant maximin probability for binary environments with
/// outside option x0 and highest alternative xbar.
struct BinaryRobust {
    double x0 = 0.0;
    double xbar = 1.0;
    double delta = 0.9;
};

/// Rule p_{x0} over {0, xbar}: for each y the largest stop probability
/// whose binary ratio still reaches the binary robust ratio at x0.
struct BoundedRobust {
    double x0 = 0.0;
    double xbar = 1.0;
    double delta = 0.9;
};

/// min{(1 - delta) / (2 - delta) + alpha * y, 1}.
struct Linear {
    double alpha = 0.0;
    double delta = 0.9;
};

/// min{sqrt(beta (1 - delta) y / (1 - y)), 1} below delta, 1 from delta on.
/// y is clamped up to `lower` before evaluation.
struct Sqrt {
    double beta = 0.0;
    double delta = 0.9;
    double lower = 1.0 / 89.0;
};

/// Right-continuous step function: probs[i] on [knots[i], knots[i+1]),
/// probs.front() below the first knot, probs.back() from the last knot on.
struct Piecewise {
    std::vector<double> knots;
    std::vector<double> probs;
};

/// Deterministic rule: stop iff y >= threshold.
struct Cutoff {
    double threshold = 0.0;
};

using RuleFamily =
    std::variant<Constant, QStar, BinaryRobust, BoundedRobust, Linear, Sqrt, Piecewise, Cutoff>;

/// A stationary decision rule: maps the best-so-far value to a stop
/// probability in [0, 1].
class StoppingRule {
public:
    StoppingRule() = default;
    StoppingRule(RuleFamily family);  // NOLINT(google-explicit-constructor)

    template <class Family>
        requires std::is_constructible_v<RuleFamily, Family>
    StoppingRule(Family family)  // NOLINT(google-explicit-constructor)
        : StoppingRule(RuleFamily(std::move(family))) {}

    [[nodiscard]] double operator()(double y) const;

    /// lim p(y) as y grows without bound.
    [[nodiscard]] double limit() const;

    [[nodiscard]] const RuleFamily& family() const noexcept { return family_; }
    [[nodiscard]] std::string family_name() const;

    /// True for families that are nondecreasing by construction. Piecewise
    /// tables are checked entry by entry.
    [[nodiscard]] bool is_monotone() const;

private:
    RuleFamily family_ = Constant{1.0};
};

/// Throws ValidationError when parameters are out of range.
void validate(const StoppingRule& rule);

/// Throws ValidationError unless the rule is nondecreasing.
void require_monotone(const StoppingRule& rule);

}  // namespace robust_search
