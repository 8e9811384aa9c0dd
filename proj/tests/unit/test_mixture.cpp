#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "oracles.hpp"
#include "robust_search/error.hpp"
#include "robust_search/payoff.hpp"
#include "robust_search/rules.hpp"

namespace rs = robust_search;

namespace {

struct Instance {
    rs::Mixture mix;
    std::vector<double> z, sigma, weights;
};

Instance random_mixture(oracle::Rng& rng) {
    Instance in;
    const int n = rng.integer(2, 4);
    double total = 0.0;
    for (int i = 0; i < n; ++i) {
        in.z.push_back(rng.uniform(0.05, 1.0));
        in.sigma.push_back(rng.uniform(0.0, 1.0));
        in.weights.push_back(rng.uniform(0.1, 1.0));
        total += in.weights.back();
    }
    for (double& w : in.weights) w /= total;
    for (int i = 0; i < n; ++i) {
        in.mix.components.emplace_back(rs::Binary{in.z[static_cast<std::size_t>(i)],
                                                  in.sigma[static_cast<std::size_t>(i)]});
    }
    in.mix.weights = in.weights;
    return in;
}

}  // namespace

TEST(Mixture, OptimalValueMatchesBackwardInduction) {
    oracle::Rng rng(31);
    for (int i = 0; i < 40; ++i) {
        const Instance in = random_mixture(rng);
        const rs::CostModel cost{rng.uniform(0.3, 0.95), i % 2 ? rng.uniform(0.0, 0.05) : 0.0};
        const double y = rng.uniform(0.0, 0.6);
        EXPECT_NEAR(rs::mixture_optimal_value(in.mix, y, cost),
                    oracle::mixture_optimal_value(in.z, in.sigma, in.weights, y, cost.delta,
                                                  cost.kappa),
                    1e-9);
    }
}

TEST(Mixture, LearningCannotBeatKnowingTheEnvironment) {
    oracle::Rng rng(32);
    for (int i = 0; i < 50; ++i) {
        const Instance in = random_mixture(rng);
        const rs::CostModel cost{rng.uniform(0.3, 0.95), 0.0};
        const double y = rng.uniform(0.01, 0.6);
        double informed = 0.0;
        for (std::size_t k = 0; k < in.z.size(); ++k) {
            informed += in.weights[k] * rs::optimal_value(in.mix.components[k], y, cost);
        }
        const double bayes = rs::mixture_optimal_value(in.mix, y, cost);
        EXPECT_LE(bayes, informed + 1e-12);
        EXPECT_GE(bayes, y - 1e-15);
    }
}

TEST(Mixture, RuleValueIsTheWeightedComponentValue) {
    const rs::Mixture mix{{rs::Binary{0.5, 0.2}, rs::Binary{1.0, 0.1}}, {0.25, 0.75}};
    const rs::CostModel cost{0.9, 0.0};
    const rs::StoppingRule rule = rs::pstar_rule(1.0, 0.9);
    const double want = 0.25 * rs::rule_value(rule, rs::Binary{0.5, 0.2}, 0.1, cost) +
                        0.75 * rs::rule_value(rule, rs::Binary{1.0, 0.1}, 0.1, cost);
    EXPECT_NEAR(rs::mixture_rule_value(rule, mix, 0.1, cost), want, 1e-15);
}

TEST(Mixture, Unsupported) {
    const rs::Mixture mix{{rs::TwoPoint{0.1, 0.5, 0.2}}, {1.0}};
    EXPECT_THROW((void)rs::mixture_optimal_value(mix, 0.1, rs::CostModel{0.9, 0.0}),
                 rs::UnsupportedError);
    const rs::Mixture binary{{rs::Binary{0.5, 0.2}}, {1.0}};
    EXPECT_THROW((void)rs::mixture_optimal_value(binary, 0.1, rs::CostModel{1.0, 0.1}),
                 rs::UnsupportedError);
}
