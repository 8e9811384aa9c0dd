#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "robust_search/error.hpp"
#include "robust_search/rules.hpp"
#include "robust_search/verifier.hpp"

namespace rs = robust_search;

TEST(Derive, RecoversTheOutsideOptionOfTheTarget) {
    rs::DeriveOptions opts;
    opts.grid = 32;
    const double x = 0.3;
    const rs::DerivedRule d = rs::derive_rule(rs::rho(x), 0.9, opts);
    ASSERT_TRUE(d.rule.is_monotone());
    // Cells near x are (0.9^k - 0.9^(k+1)) / grid wide.
    const double k = std::floor(std::log(x) / std::log(0.9));
    const double cell = (std::pow(0.9, k) - std::pow(0.9, k + 1)) / opts.grid;
    EXPECT_NEAR(d.x0, x, 2.0 * cell);
    EXPECT_DOUBLE_EQ(d.rule(0.95), 1.0);

    rs::GridOptions grid;
    grid.y_points = 128;
    grid.z_per_decade = 256;
    const auto rep = rs::performance_ratio(d.rule, d.x0, 1.0, rs::CostModel{0.9, 0.0},
                                           rs::EnvironmentClass::general, grid);
    EXPECT_GE(rep.ratio, d.target - 1e-3);
}

TEST(Derive, CsvTableCoversUpToOne) {
    rs::DeriveOptions opts;
    opts.grid = 4;
    const rs::DerivedRule d = rs::derive_rule(0.8, 0.5, opts);
    std::ostringstream out;
    rs::write_rule_csv(out, d);
    std::istringstream in(out.str());
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line, "y_lo,y_hi,p");
    std::string last;
    while (std::getline(in, line)) last = line;
    EXPECT_EQ(last.substr(last.find(',') + 1, 2), "1,");
}

TEST(Derive, RejectsUnreachableTargets) {
    EXPECT_THROW((void)rs::derive_rule(1.5, 0.9), rs::ValidationError);
    EXPECT_THROW((void)rs::derive_rule(0.7, 1.0), rs::ValidationError);
}

TEST(Calibrate, LossIsNonnegativeAndMinimized) {
    rs::CalibrationOptions opts;
    opts.x0_points = 40;
    opts.z_per_decade = 64;
    opts.tolerance = 1e-3;
    const double delta = 0.9;
    const rs::CalibrationResult best = rs::calibrate_linear(delta, opts);
    EXPECT_GT(best.param, 0.005);
    EXPECT_LT(best.param, 6.0);
    EXPECT_GE(best.loss, -1e-9);
    for (double alpha : {0.05, 0.3, 2.0, 5.0}) {
        EXPECT_GE(rs::performance_loss(rs::linear_rule(alpha, delta), delta, opts),
                  best.loss - 1e-9);
    }
}

TEST(Calibrate, BoundedRobustRuleAttainsTheRobustRatioAtItsOutsideOption) {
    rs::GridOptions grid;
    grid.y_points = 96;
    grid.z_per_decade = 256;
    for (double x0 : {0.05, 0.2}) {
        const auto rep = rs::performance_ratio(rs::bounded_robust_rule(x0, 1.0, 0.9), x0, 1.0,
                                               rs::CostModel{0.9, 0.0},
                                               rs::EnvironmentClass::general, grid);
        EXPECT_GE(rep.ratio, rs::binary_robust_ratio(x0, 0.9) - 1e-6) << "x0=" << x0;
    }
}

TEST(ComputeL, BoundedRuleAttainsAboveButNotFarBelow) {
    EXPECT_TRUE(rs::bounded_rule_attains(0.2, 0.9));
    EXPECT_FALSE(rs::bounded_rule_attains(0.002, 0.9));
}
