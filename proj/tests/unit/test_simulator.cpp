#include <gtest/gtest.h>

#include <cmath>
#include <cstring>
#include <sstream>

#include "robust_search/error.hpp"
#include "robust_search/payoff.hpp"
#include "robust_search/rules.hpp"
#include "robust_search/simulator.hpp"

namespace rs = robust_search;

namespace {

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

}  // namespace

TEST(Simulator, FixedSeedIsBitReproducible) {
    const rs::Environment env = rs::Discrete{{0.0, 0.4, 1.0}, {0.5, 0.3, 0.2}};
    const rs::CostModel cost{0.9, 0.01};
    const rs::StoppingRule rule = rs::pstar_rule(1.0, 0.9);
    const auto a = rs::estimate_value(env, rule, 0.2, cost, 5000, 42);
    const auto b = rs::estimate_value(env, rule, 0.2, cost, 5000, 42);
    EXPECT_TRUE(same_bits(a.mean, b.mean));
    EXPECT_TRUE(same_bits(a.standard_error, b.standard_error));
    const auto c = rs::estimate_value(env, rule, 0.2, cost, 5000, 43);
    EXPECT_FALSE(same_bits(a.mean, c.mean));
}

TEST(Simulator, PathsReplayIndividually) {
    const rs::Environment env = rs::Binary{1.0, 0.2};
    const rs::CostModel cost{0.8, 0.0};
    const rs::StoppingRule rule = rs::StoppingRule{rs::Constant{0.3}};
    const auto paths = rs::simulate_paths(env, rule, 0.1, cost, 200, 9);
    ASSERT_EQ(paths.size(), 200u);
    for (std::uint64_t i = 0; i < paths.size(); i += 37) {
        const auto one = rs::simulate_path(env, rule, 0.1, cost, 9, i);
        EXPECT_EQ(one.path_id, i);
        EXPECT_EQ(one.stop_round, paths[i].stop_round);
        EXPECT_TRUE(same_bits(one.payoff, paths[i].payoff));
    }
}

TEST(Simulator, PayoffMatchesStoppingRoundAndValue) {
    const rs::CostModel cost{0.9, 0.05};
    const auto paths = rs::simulate_paths(rs::Binary{1.0, 0.3}, rs::pstar_rule(1.0, 0.9), 0.2, cost,
                                          100, 1);
    for (const auto& p : paths) {
        const double t = static_cast<double>(p.stop_round);
        const double discount = std::pow(cost.delta, t);
        const double paid = cost.kappa * (cost.delta - discount * cost.delta) / (1.0 - cost.delta);
        EXPECT_NEAR(p.payoff, discount * p.y_at_stop - paid, 1e-12);
    }
}

TEST(Simulator, AgreesWithAnalyticValue) {
    const rs::Discrete env{{0.0, 0.3, 0.9}, {0.6, 0.3, 0.1}};
    const rs::CostModel cost{0.85, 0.02};
    const rs::StoppingRule rule = rs::linear_rule(0.8, 0.85);
    const auto est = rs::estimate_value(env, rule, 0.15, cost, 100000, 7);
    const double want = rs::rule_value(rule, env, 0.15, cost);
    EXPECT_LT(std::abs(est.mean - want), 3.0 * est.standard_error);
}

TEST(Simulator, RoundCap) {
    EXPECT_EQ(rs::round_cap(rs::CostModel{0.5, 0.0}), 40);
    EXPECT_EQ(rs::round_cap(rs::CostModel{1.0, 0.1}), 1'000'000);
}

TEST(Simulator, CsvAndValidation) {
    const auto paths = rs::simulate_paths(rs::Binary{1.0, 0.5}, rs::StoppingRule{rs::Constant{0.5}},
                                          0.1, rs::CostModel{0.9, 0.0}, 3, 1);
    std::ostringstream out;
    rs::write_paths_csv(out, paths);
    EXPECT_EQ(out.str().substr(0, out.str().find('\n')), "path_id,stop_round,y_at_stop,payoff");
    EXPECT_THROW((void)rs::estimate_value(rs::Binary{1.0, 0.5}, rs::StoppingRule{rs::Constant{0.5}},
                                          0.1, rs::CostModel{0.9, 0.0}, 10, 1),
                 rs::ValidationError);
}
