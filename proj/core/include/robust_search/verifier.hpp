#pragma once

#include <iosfwd>
#include <limits>
#include <string>
#include <vector>

#include "robust_search/cost_model.hpp"
#include "robust_search/environment.hpp"
#include "robust_search/stopping_rule.hpp"

namespace robust_search {

inline constexpr double kUnbounded = std::numeric_limits<double>::infinity();

/// Which adversary the ratio is taken against.
///  binary:  lotteries over {0, z}; the searcher stops as soon as z arrives.
///  general: all environments, reduced to lotteries over {0, z} where the
///           rule keeps running after z arrives.
enum class EnvironmentClass { binary, general };

enum class Scenario { stop, wait, limit };

[[nodiscard]] const char* to_string(Scenario s);
[[nodiscard]] const char* to_string(EnvironmentClass c);

struct GridOptions {
    int y_points = 1024;
    int z_per_decade = 512;
    double z_cap = 1e6;          // z range is capped at z_cap * y when xbar is unbounded
    double y_cap = 1e4;          // y range is capped at y_cap * x0 when xbar is unbounded
    double tie_tolerance = 1e-9; // argmin ties prefer the wait scenario and larger z
};

struct PointRatio {
    double y = 0.0;
    double ratio = 0.0;
    double z = 0.0;
    double sigma = 0.0;
    Scenario scenario = Scenario::stop;
};

/// inf over binary environments of U_p / V at best-so-far y.
[[nodiscard]] PointRatio pointwise_ratio(const StoppingRule& rule, double y, double xbar,
                                         const CostModel& cost,
                                         EnvironmentClass cls = EnvironmentClass::general,
                                         const GridOptions& grid = {});

struct RatioReport {
    double ratio = 0.0;
    Binary argmin_env;          // z = inf for limit argmins
    double argmin_y = 0.0;
    Scenario scenario = Scenario::stop;
    std::vector<PointRatio> curve;
    bool monotone_ratio = true; // r_p(y) nondecreasing on the grid
};

/// inf over y >= x0 of the pointwise ratio. In the binary class the best-so-far
/// value never moves off x0, so only y = x0 is examined.
[[nodiscard]] RatioReport performance_ratio(const StoppingRule& rule, double x0, double xbar,
                                            const CostModel& cost,
                                            EnvironmentClass cls = EnvironmentClass::general,
                                            const GridOptions& grid = {});

/// Curve CSV with header y,ratio,argmin_z,argmin_sigma,scenario.
void write_curve_csv(std::ostream& out, const RatioReport& report, int precision = 6);

struct TwoPointOptions {
    GridOptions grid{.y_points = 256, .z_per_decade = 512};
    int interior_y_points = 48;
    int w_points = 24;
    int z_points = 24;
    int sigma_points = 48;
};

struct TwoPointReport {
    double ratio = 0.0;
    TwoPoint argmin_env;
    double argmin_y = 0.0;
    Scenario scenario = Scenario::stop;
    double binary_ratio = 0.0;   // the w = 0 slice
    double interior_ratio = std::numeric_limits<double>::infinity();  // best with 0 < w
};

/// Ratio over two-point environments {w, z}: the w = 0 slice through the
/// closed forms and a grid over y < w < z through the discrete solver.
[[nodiscard]] TwoPointReport twopoint_ratio(const StoppingRule& rule, double x0, double xbar,
                                            const CostModel& cost,
                                            const TwoPointOptions& opts = {});

struct LOptions {
    double resolution = 1e-4;
    double tolerance = 1e-9;
    int scan_points = 48;
    TwoPointOptions twopoint{.grid = {.y_points = 256, .z_per_decade = 512},
                             .interior_y_points = 12,
                             .w_points = 10,
                             .z_points = 10,
                             .sigma_points = 24};
};

struct LResult {
    double L = 0.0;
    int evaluations = 0;
};

/// True when the bounded robust rule for x0 reaches the binary robust ratio
/// against all environments on [0, 1].
[[nodiscard]] bool bounded_rule_attains(double x0, double delta, const LOptions& opts = {});

/// Smallest x0 from which the bounded robust rule keeps the binary ratio
/// against all environments on [0, 1].
[[nodiscard]] LResult compute_L(double delta, const LOptions& opts = {});

/// x0 / sup_F V(F, x0) over environments on [0, xbar].
[[nodiscard]] double deterministic_bound(double x0, double xbar, const CostModel& cost);

struct DeterministicCheck {
    double ratio = 0.0;
    double bound = 0.0;
    bool holds = false;
};

/// Measures the cutoff rule 1{y >= cutoff} and compares to the bound.
[[nodiscard]] DeterministicCheck deterministic_bound_check(double cutoff, double x0, double xbar,
                                                           const CostModel& cost,
                                                           const GridOptions& grid = {});

struct HistoryClosure {
    double binary_ratio = 0.0;      // over lotteries {0, z}
    double consistent_ratio = 0.0;  // same lotteries with eps mass on each observed value
};

/// Compares the ratio at the best-so-far value of `history` over binary
/// lotteries with the ratio over nearby environments that can generate
/// the history. The two agree up to O(eps).
[[nodiscard]] HistoryClosure history_closure_ratio(const StoppingRule& rule, double x0,
                                                   const std::vector<double>& history,
                                                   double xbar, const CostModel& cost,
                                                   double eps = 1e-9, int z_points = 32,
                                                   int sigma_points = 64);

}  // namespace robust_search
