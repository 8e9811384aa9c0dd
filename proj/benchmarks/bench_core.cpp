#include <benchmark/benchmark.h>

#include "robust_search/robust_search.hpp"

namespace rs = robust_search;

namespace {

const rs::CostModel kCost{0.9, 0.0};

void BM_ReservationValueDiscrete(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    rs::Discrete d;
    for (std::size_t i = 0; i < n; ++i) {
        d.support.push_back(static_cast<double>(i) / static_cast<double>(n));
        d.probs.push_back(1.0 / static_cast<double>(n));
    }
    for (auto _ : state) benchmark::DoNotOptimize(rs::reservation_value(d, kCost));
}
BENCHMARK(BM_ReservationValueDiscrete)->Range(8, 4096);

void BM_RuleValueDiscrete(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    rs::Discrete d;
    for (std::size_t i = 0; i < n; ++i) {
        d.support.push_back(static_cast<double>(i) / static_cast<double>(n));
        d.probs.push_back(1.0 / static_cast<double>(n));
    }
    const rs::StoppingRule rule = rs::pstar_rule(1.0, 0.9);
    for (auto _ : state) benchmark::DoNotOptimize(rs::rule_value_discrete(rule, d, 0.1, kCost));
}
BENCHMARK(BM_RuleValueDiscrete)->Range(8, 512);

void BM_PointwiseRatio(benchmark::State& state) {
    const rs::StoppingRule rule = rs::pstar_rule(1.0, 0.9);
    rs::GridOptions grid;
    grid.z_per_decade = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(rs::pointwise_ratio(rule, 0.1, 1.0, kCost,
                                                     rs::EnvironmentClass::general, grid));
    }
}
BENCHMARK(BM_PointwiseRatio)->Arg(64)->Arg(512);

void BM_PerformanceRatioUnbounded(benchmark::State& state) {
    const rs::StoppingRule rule = rs::constant_rule(kCost);
    for (auto _ : state) {
        benchmark::DoNotOptimize(rs::performance_ratio(rule, 0.1, rs::kUnbounded, kCost));
    }
}
BENCHMARK(BM_PerformanceRatioUnbounded)->Unit(benchmark::kMillisecond);

void BM_BoundedRobustRule(benchmark::State& state) {
    const rs::StoppingRule rule = rs::bounded_robust_rule(0.05, 1.0, 0.9);
    double y = 0.05;
    for (auto _ : state) {
        benchmark::DoNotOptimize(rule(y));
        y = y < 0.85 ? y + 1e-3 : 0.05;
    }
}
BENCHMARK(BM_BoundedRobustRule);

void BM_DeriveRule(benchmark::State& state) {
    rs::DeriveOptions opts;
    opts.grid = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(rs::derive_rule(0.75, 0.9, opts));
}
BENCHMARK(BM_DeriveRule)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_EstimateValue(benchmark::State& state) {
    const rs::Environment env = rs::Discrete{{0.0, 0.4, 1.0}, {0.5, 0.3, 0.2}};
    const rs::StoppingRule rule = rs::pstar_rule(1.0, 0.9);
    const auto n = static_cast<std::uint64_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(rs::estimate_value(env, rule, 0.2, kCost, n, 1));
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * n));
}
BENCHMARK(BM_EstimateValue)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
