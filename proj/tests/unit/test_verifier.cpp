#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "oracles.hpp"
#include "robust_search/error.hpp"
#include "robust_search/rules.hpp"
#include "robust_search/verifier.hpp"

namespace rs = robust_search;

TEST(Verifier, PointwiseRatioMatchesBruteForceGrid) {
    struct Case {
        rs::StoppingRule rule;
        double y;
        double delta;
        double kappa;
        rs::EnvironmentClass cls;
    };
    const std::vector<Case> cases = {
        {rs::pstar_rule(1.0, 0.9), 0.1, 0.9, 0.0, rs::EnvironmentClass::general},
        {rs::pstar_rule(1.0, 0.9), 0.3, 0.9, 0.0, rs::EnvironmentClass::binary},
        {rs::linear_rule(0.6, 0.8), 0.2, 0.8, 0.0, rs::EnvironmentClass::general},
        {rs::StoppingRule{rs::Constant{0.2}}, 0.4, 0.7, 0.02, rs::EnvironmentClass::general},
        {rs::bounded_robust_rule(0.1, 1.0, 0.9), 0.15, 0.9, 0.0, rs::EnvironmentClass::general},
    };
    for (const auto& c : cases) {
        const rs::CostModel cost{c.delta, c.kappa};
        const rs::PointRatio got = rs::pointwise_ratio(c.rule, c.y, 1.0, cost, c.cls);
        const oracle::GridRatio want = oracle::grid_pointwise_ratio(
            c.rule, c.y, 1.0, c.delta, c.kappa, c.cls == rs::EnvironmentClass::binary, 120, 600);
        // The oracle grid only sees a subset of environments, so it can only
        // sit above the true infimum.
        EXPECT_LE(got.ratio, want.ratio + 1e-9) << c.rule.family_name() << " y=" << c.y;
        EXPECT_NEAR(got.ratio, want.ratio, 3e-3) << c.rule.family_name() << " y=" << c.y;
    }
}

TEST(Verifier, ConstantRuleGuaranteesHalfOnBinaryEnvironments) {
    const rs::CostModel cost{0.9, 0.0};
    const auto rep = rs::performance_ratio(rs::constant_rule(cost), 0.1, rs::kUnbounded, cost,
                                           rs::EnvironmentClass::binary);
    EXPECT_NEAR(rep.ratio, 0.5, 1e-6);
    EXPECT_GE(rep.ratio, 0.5 - 1e-6);
}

TEST(Verifier, ConstantRuleGuaranteesQuarterOnGeneralEnvironments) {
    const rs::CostModel cost{0.6, 0.0};
    const auto rep = rs::performance_ratio(rs::constant_rule(cost), 0.1, rs::kUnbounded, cost);
    EXPECT_GE(rep.ratio, 0.25 - 1e-6);
    EXPECT_LE(rep.ratio, 0.25 + 1e-3);
    EXPECT_TRUE(rep.monotone_ratio);
}

TEST(Verifier, BinaryClassOfQStarReproducesRho) {
    const rs::CostModel cost{0.9, 0.0};
    for (double x : {0.1, 0.3}) {
        const auto rep = rs::performance_ratio(rs::pstar_rule(1.0, 0.9), x, 1.0, cost,
                                               rs::EnvironmentClass::binary);
        EXPECT_NEAR(rep.ratio, rs::rho(x), 1e-6);
    }
}

TEST(Verifier, CurveCsv) {
    const rs::CostModel cost{0.9, 0.0};
    rs::GridOptions grid;
    grid.y_points = 4;
    grid.z_per_decade = 32;
    const auto rep = rs::performance_ratio(rs::pstar_rule(1.0, 0.9), 0.2, 1.0, cost,
                                           rs::EnvironmentClass::general, grid);
    ASSERT_EQ(rep.curve.size(), 4u);
    std::ostringstream out;
    rs::write_curve_csv(out, rep);
    std::string header;
    std::istringstream in(out.str());
    std::getline(in, header);
    EXPECT_EQ(header, "y,ratio,argmin_z,argmin_sigma,scenario");
}

TEST(Verifier, DeterministicRulesAreBoundedByTheDeterministicBound) {
    oracle::Rng rng(21);
    rs::GridOptions grid;
    grid.y_points = 64;
    grid.z_per_decade = 128;
    for (int i = 0; i < 10; ++i) {
        const rs::CostModel cost{rng.uniform(0.3, 0.95), 0.0};
        const double x0 = rng.uniform(0.05, 0.5);
        const double cutoff = rng.uniform(0.0, 1.2);
        const auto check = rs::deterministic_bound_check(cutoff, x0, 1.0, cost, grid);
        EXPECT_NEAR(check.bound, oracle::deterministic_bound(x0, 1.0, cost.delta, 0.0), 1e-15);
        EXPECT_TRUE(check.holds) << "cutoff=" << cutoff << " ratio=" << check.ratio;
    }
}

TEST(Verifier, HistoryInconsistentEnvironmentsDoNotMoveTheRatio) {
    const rs::CostModel cost{0.9, 0.0};
    const auto h = rs::history_closure_ratio(rs::pstar_rule(1.0, 0.9), 0.1, {0.05, 0.2, 0.12},
                                             1.0, cost);
    EXPECT_NEAR(h.binary_ratio, h.consistent_ratio, 1e-6);
}

TEST(Verifier, TwoPointRatioNeverExceedsTheBinarySlice) {
    const rs::CostModel cost{0.9, 0.0};
    rs::TwoPointOptions opts;
    opts.grid.y_points = 64;
    opts.grid.z_per_decade = 128;
    opts.interior_y_points = 8;
    opts.w_points = 6;
    opts.z_points = 6;
    opts.sigma_points = 12;
    const auto rep = rs::twopoint_ratio(rs::pstar_rule(1.0, 0.9), 0.2, 1.0, cost, opts);
    EXPECT_LE(rep.ratio, rep.binary_ratio);
    EXPECT_LE(rep.ratio, rep.interior_ratio);
}

TEST(Verifier, RejectsBadInputs) {
    const rs::CostModel cost{0.9, 0.0};
    const rs::StoppingRule rule = rs::pstar_rule(1.0, 0.9);
    EXPECT_THROW((void)rs::performance_ratio(rule, 0.0, 1.0, cost), rs::ValidationError);
    EXPECT_THROW((void)rs::performance_ratio(rule, 2.0, 1.0, cost), rs::ValidationError);
    const rs::StoppingRule down = rs::Piecewise{{0.1, 0.2}, {0.5, 0.3}};
    EXPECT_THROW((void)rs::performance_ratio(down, 0.1, 1.0, cost), rs::ValidationError);
}
