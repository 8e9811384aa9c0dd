#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "robust_search/cost_model.hpp"
#include "robust_search/environment.hpp"
#include "robust_search/stopping_rule.hpp"

namespace robust_search {

struct PathResult {
    std::uint64_t path_id = 0;
    long stop_round = 0;
    double y_at_stop = 0.0;
    double payoff = 0.0;
    bool truncated = false;
};

struct Estimate {
    double mean = 0.0;
    double standard_error = 0.0;
    std::uint64_t n_paths = 0;
    std::uint64_t seed = 0;
};

/// Rounds after which a path is cut off: delta^T_max < 1e-12.
[[nodiscard]] long round_cap(const CostModel& cost);

/// One search path. Randomness is a counter-based stream keyed by
/// (seed, path_id), so any path can be replayed alone.
[[nodiscard]] PathResult simulate_path(const Environment& env, const StoppingRule& rule, double x0,
                                       const CostModel& cost, std::uint64_t seed,
                                       std::uint64_t path_id = 0);

[[nodiscard]] Estimate estimate_value(const Environment& env, const StoppingRule& rule, double x0,
                                      const CostModel& cost, std::uint64_t n_paths,
                                      std::uint64_t seed);

/// Runs `n_paths` paths and returns them in path order.
[[nodiscard]] std::vector<PathResult> simulate_paths(const Environment& env,
                                                     const StoppingRule& rule, double x0,
                                                     const CostModel& cost, std::uint64_t n_paths,
                                                     std::uint64_t seed);

/// CSV with header path_id,stop_round,y_at_stop,payoff.
void write_paths_csv(std::ostream& out, const std::vector<PathResult>& paths, int precision = 6);

}  // namespace robust_search
