#include <gtest/gtest.h>

#include <cmath>

#include "robust_search/error.hpp"
#include "robust_search/json_codec.hpp"

namespace rs = robust_search;
using nlohmann::json;

TEST(Json, NonFiniteNumbersUseStrings) {
    EXPECT_EQ(rs::number_to_json(INFINITY), json("inf"));
    EXPECT_EQ(rs::number_to_json(-INFINITY), json("-inf"));
    EXPECT_TRUE(std::isinf(rs::number_from_json(json("inf"))));
    EXPECT_DOUBLE_EQ(rs::number_from_json(json(0.25)), 0.25);
    EXPECT_THROW((void)rs::number_from_json(json("many")), rs::ValidationError);
}

TEST(Json, EnvironmentsRoundTrip) {
    const std::vector<rs::Environment> envs = {
        rs::Binary{1.0, 0.3}, rs::TwoPoint{0.2, 1.0, 0.4},
        rs::Discrete{{0.0, 0.5, 1.0}, {0.2, 0.3, 0.5}},
        rs::Mixture{{rs::Binary{1.0, 0.1}, rs::Binary{0.5, 0.9}}, {0.5, 0.5}}};
    for (const auto& env : envs) {
        const json j = rs::environment_to_json(env);
        EXPECT_EQ(rs::environment_to_json(rs::environment_from_json(j)), j);
    }
}

TEST(Json, MalformedInputIsAValidationError) {
    EXPECT_THROW((void)rs::environment_from_json(json{{"type", "binary"}, {"z", 1.0}}),
                 rs::ValidationError);
    EXPECT_THROW((void)rs::environment_from_json(json{{"type", "pareto"}}), rs::ValidationError);
    EXPECT_THROW((void)rs::rule_from_json(json{{"family", "constant"}, {"q", 2.0}}),
                 rs::ValidationError);
    EXPECT_THROW((void)rs::rule_from_json(json::array()), rs::ValidationError);
}

TEST(Json, CostModelKappaIsOptional) {
    const rs::CostModel c = json{{"delta", 0.8}}.get<rs::CostModel>();
    EXPECT_DOUBLE_EQ(c.delta, 0.8);
    EXPECT_DOUBLE_EQ(c.kappa, 0.0);
}
