#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "robust_search/error.hpp"
#include "robust_search/json_codec.hpp"
#include "robust_search/rules.hpp"

namespace rs = robust_search;

TEST(Rules, ConstantProbability) {
    EXPECT_NEAR(rs::constant_probability(0.5), 1.0 / 3.0, 1e-15);
    EXPECT_NEAR(rs::constant_probability(0.9), 0.1 / 1.1, 1e-15);
    EXPECT_THROW((void)rs::constant_probability(1.0), rs::Error);
    const rs::StoppingRule r = rs::constant_rule(rs::CostModel{0.9, 0.0});
    EXPECT_DOUBLE_EQ(r(0.3), r(30.0));
}

TEST(Rules, RhoReferenceValues) {
    struct Row {
        double x;
        double rho;
    };
    // Reference values carry 2-3 digits; 1/20 is checked against the formula.
    for (const Row& row : {Row{1.0 / 89, 0.538}, Row{0.1, 0.625}, Row{1.0 / 6, 0.666},
                           Row{0.2, 0.685}, Row{0.25, 0.71}, Row{1.0 / 3, 0.75}, Row{0.5, 0.82}}) {
        EXPECT_NEAR(rs::rho(row.x), row.rho, 0.005) << "x=" << row.x;
    }
    const double x = 0.05;
    EXPECT_NEAR(rs::rho(x), 0.5 + (x + std::sqrt(x * (x + 8.0))) / 8.0, 1e-15);
    EXPECT_NEAR(rs::rho(x), 0.5856, 5e-4);
}

TEST(Rules, RhoIsTheStopScenarioRatioOfQStarForEveryDelta) {
    oracle::Rng rng(11);
    for (int i = 0; i < 200; ++i) {
        const double delta = rng.uniform(0.05, 0.999);
        const double x = rng.uniform(1e-4, 1.0);
        const double q = rs::q_star(x, delta);
        EXPECT_NEAR(q / (1.0 - delta * (1.0 - q)), rs::rho(x), 1e-12);
    }
}

TEST(Rules, BinaryRobustMatchesQStarOnTheFirstBranch) {
    for (double delta : {0.3, 0.6, 0.9}) {
        const double b = rs::binary_lower_boundary(delta);
        for (double x : {0.01, 0.5 * b, b}) {
            EXPECT_NEAR(rs::binary_robust_rule(x, delta).q, rs::q_star(x, delta), 1e-12);
            EXPECT_NEAR(rs::binary_robust_ratio(x, delta), rs::rho(x), 1e-12);
        }
    }
}

TEST(Rules, BinaryRobustIsContinuousAcrossBranches) {
    for (double delta : {0.2, 0.5, 0.8, 0.95}) {
        for (double edge : {rs::binary_lower_boundary(delta), delta}) {
            const double lo = edge * (1.0 - 1e-9);
            const double hi = std::min(1.0, edge * (1.0 + 1e-9));
            EXPECT_NEAR(rs::binary_robust_rule(lo, delta).q, rs::binary_robust_rule(hi, delta).q,
                        1e-6);
            EXPECT_NEAR(rs::binary_robust_ratio(lo, delta), rs::binary_robust_ratio(hi, delta),
                        1e-6);
        }
    }
}

TEST(Rules, BinaryRobustAgreesWithGridMaximin) {
    for (double delta : {0.4, 0.9}) {
        for (double x : {0.05, 0.5, 0.85}) {
            const oracle::Maximin m = oracle::binary_maximin(x, delta);
            EXPECT_NEAR(rs::binary_robust_rule(x, delta).q, m.q, 1e-4) << delta << ' ' << x;
            EXPECT_NEAR(rs::binary_robust_ratio(x, delta), m.ratio, 1e-4) << delta << ' ' << x;
        }
    }
}

TEST(Rules, ClosedFormFamiliesAreMonotone) {
    const std::vector<rs::StoppingRule> rules = {
        rs::pstar_rule(1.0, 0.9),        rs::linear_rule(0.6, 0.9),
        rs::sqrt_rule(0.8, 0.95),        rs::bounded_robust_rule(0.1, 1.0, 0.9),
        rs::StoppingRule{rs::Cutoff{0.4}}};
    for (const auto& rule : rules) {
        EXPECT_TRUE(rule.is_monotone()) << rule.family_name();
        double prev = -1.0;
        for (int i = 0; i <= 400; ++i) {
            const double y = 1.2 * i / 400.0;
            const double p = rule(y);
            EXPECT_GE(p, 0.0);
            EXPECT_LE(p, 1.0);
            EXPECT_GE(p, prev - 1e-12) << rule.family_name() << " y=" << y;
            prev = p;
        }
    }
}

TEST(Rules, BoundedRobustStopsForSureFromDeltaOn) {
    const rs::StoppingRule rule = rs::bounded_robust_rule(0.1, 1.0, 0.9);
    EXPECT_DOUBLE_EQ(rule(0.9), 1.0);
    EXPECT_DOUBLE_EQ(rule(0.95), 1.0);
    EXPECT_NEAR(rule(0.1), rs::q_star(0.1, 0.9), 1e-6);
}

TEST(Rules, Validation) {
    EXPECT_THROW(rs::validate(rs::StoppingRule{rs::Constant{1.5}}), rs::ValidationError);
    EXPECT_THROW(rs::validate(rs::StoppingRule{rs::Piecewise{{0.2, 0.1}, {0.1, 0.2}}}),
                 rs::ValidationError);
    const rs::StoppingRule down = rs::Piecewise{{0.1, 0.2}, {0.5, 0.3}};
    EXPECT_NO_THROW(rs::validate(down));
    EXPECT_FALSE(down.is_monotone());
    EXPECT_THROW(rs::require_monotone(down), rs::ValidationError);
}

TEST(Rules, PiecewiseIsRightContinuous) {
    const rs::StoppingRule r = rs::Piecewise{{0.1, 0.2, 0.4}, {0.1, 0.3, 0.9}};
    EXPECT_DOUBLE_EQ(r(0.05), 0.1);
    EXPECT_DOUBLE_EQ(r(0.2), 0.3);
    EXPECT_DOUBLE_EQ(r(0.399), 0.3);
    EXPECT_DOUBLE_EQ(r(0.4), 0.9);
    EXPECT_DOUBLE_EQ(r(7.0), 0.9);
}

TEST(Rules, JsonEncodingIsLossless) {
    oracle::Rng rng(5);
    for (int i = 0; i < 1000; ++i) {
        const double delta = rng.uniform(0.05, 0.99);
        rs::StoppingRule rule;
        switch (i % 7) {
            case 0: rule = rs::Constant{rng.uniform()}; break;
            case 1: rule = rs::QStar{rng.uniform(0.5, 2.0), delta}; break;
            case 2: rule = rs::BinaryRobust{rng.uniform(0.01, 0.9), 1.0, delta}; break;
            case 3: rule = rs::Linear{rng.uniform(0.0, 5.0), delta}; break;
            case 4: rule = rs::Sqrt{rng.uniform(0.01, 2.0), delta, 1.0 / 89}; break;
            case 5: rule = rs::Cutoff{rng.uniform()}; break;
            default: rule = rs::Piecewise{{0.1, 0.5}, {rng.uniform(0.0, 0.5), rng.uniform(0.5, 1.0)}};
        }
        const rs::StoppingRule back = rs::rule_from_json(rs::rule_to_json(rule));
        EXPECT_EQ(back.family_name(), rule.family_name());
        for (double y : {0.0, 0.05, 0.3, 0.77, 1.0}) {
            EXPECT_EQ(back(y), rule(y)) << rule.family_name() << " y=" << y;
        }
    }
}
