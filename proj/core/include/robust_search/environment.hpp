#pragma once

#include <variant>
#include <vector>

namespace robust_search {

/// Lottery over {0, z}: z with probability sigma.
struct Binary {
    double z = 0.0;
    double sigma = 0.0;
};

/// Lottery over {w, z} with w <= z: z with probability sigma.
struct TwoPoint {
    double w = 0.0;
    double z = 0.0;
    double sigma = 0.0;
};

/// Finite-support distribution. `support` is strictly ascending.
struct Discrete {
    std::vector<double> support;
    std::vector<double> probs;
};

using PureEnvironment = std::variant<Binary, TwoPoint, Discrete>;

/// Prior with finite support over pure environments.
struct Mixture {
    std::vector<PureEnvironment> components;
    std::vector<double> weights;
};

using Environment = std::variant<Binary, TwoPoint, Discrete, Mixture>;

inline constexpr double kProbabilityTolerance = 1e-12;

void validate(const Binary& env);
void validate(const TwoPoint& env);
void validate(const Discrete& env);
void validate(const Mixture& env);
void validate(const PureEnvironment& env);
void validate(const Environment& env);

/// Same distribution as a Discrete; coincident atoms are merged.
[[nodiscard]] Discrete to_discrete(const PureEnvironment& env);

[[nodiscard]] double mean(const PureEnvironment& env);
[[nodiscard]] double max_value(const PureEnvironment& env);

/// Narrows an Environment to a pure one; throws ValidationError for mixtures.
[[nodiscard]] PureEnvironment as_pure(const Environment& env);

}  // namespace robust_search
