#pragma once

namespace robust_search {

/// Discounting and additive search cost. Waiting one round multiplies all
/// future payoffs by `delta` and costs `kappa` (in value units).
struct CostModel {
    double delta = 0.9;
    double kappa = 0.0;

    /// Throws ConfigError unless 0 < delta <= 1, kappa >= 0 and
    /// kappa + (1 - delta) > 0.
    void validate() const;

    [[nodiscard]] bool has_additive_cost() const noexcept { return kappa > 0.0; }
};

[[nodiscard]] inline CostModel discounted(double delta) { return CostModel{delta, 0.0}; }

}  // namespace robust_search
