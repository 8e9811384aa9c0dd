#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "grid.hpp"
#include "parallel.hpp"
#include "ratio_internal.hpp"
#include "robust_search/error.hpp"
#include "robust_search/rules.hpp"

namespace robust_search {
namespace {

void check_options(double delta, const CalibrationOptions& opts) {
    if (!std::isfinite(delta) || !(delta > 0.0) || !(delta < 1.0)) {
        throw ValidationError("delta must lie in (0, 1)");
    }
    if (!(opts.x0_low > 0.0 && opts.x0_low < 1.0) || opts.x0_points < 2 ||
        opts.coarse_points < 3 || !(opts.tolerance > 0.0) || opts.z_per_decade < 1) {
        throw ValidationError("invalid calibration options");
    }
}

CalibrationResult minimize(const std::function<double(double)>& loss, double lo, double hi,
                           const CalibrationOptions& opts) {
    // Coarse scan first: the loss is not unimodal far from the optimum.
    const int n = opts.coarse_points;
    std::vector<double> grid(static_cast<std::size_t>(n));
    std::vector<double> vals(grid.size());
    for (int i = 0; i < n; ++i) grid[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (n - 1);
    for (std::size_t i = 0; i < grid.size(); ++i) vals[i] = loss(grid[i]);
    const auto best = static_cast<std::size_t>(std::min_element(vals.begin(), vals.end()) - vals.begin());

    double a = grid[best == 0 ? 0 : best - 1];
    double b = grid[std::min(best + 1, grid.size() - 1)];
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = loss(x1);
    double f2 = loss(x2);
    while (b - a > opts.tolerance) {
        if (f1 <= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = loss(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = loss(x2);
        }
    }
    CalibrationResult out{f1 <= f2 ? x1 : x2, std::min(f1, f2)};
    if (vals[best] < out.loss) out = {grid[best], vals[best]};
    return out;
}

}  // namespace

double performance_loss(const StoppingRule& rule, double delta, const CalibrationOptions& opts) {
    check_options(delta, opts);
    require_monotone(rule);
    const CostModel cost{delta, 0.0};
    const std::vector<double> ys = detail::geomspace(opts.x0_low, 1.0, opts.x0_points);
    std::vector<double> r(ys.size());
    detail::parallel_for(ys.size(), [&](std::size_t i) {
        const detail::ZTable t = detail::z_table(rule, ys[i], 1.0, cost, EnvironmentClass::general,
                                                 opts.z_per_decade);
        r[i] = detail::min_ratio(rule(ys[i]), ys[i], t, cost);
    }, 4);
    // R_p(x0) is the worst pointwise ratio from x0 upward.
    double suffix = std::numeric_limits<double>::infinity();
    double loss = -std::numeric_limits<double>::infinity();
    for (std::size_t i = ys.size(); i-- > 0;) {
        suffix = std::min(suffix, r[i]);
        loss = std::max(loss, binary_robust_ratio(ys[i], delta) - suffix);
    }
    return loss;
}

CalibrationResult calibrate_linear(double delta, const CalibrationOptions& opts) {
    check_options(delta, opts);
    return minimize([&](double a) { return performance_loss(linear_rule(a, delta), delta, opts); },
                    0.005, 6.0, opts);
}

CalibrationResult calibrate_sqrt(double delta, const CalibrationOptions& opts) {
    check_options(delta, opts);
    return minimize(
        [&](double b) { return performance_loss(sqrt_rule(b, delta, opts.x0_low), delta, opts); },
        0.005, 2.0, opts);
}

}  // namespace robust_search
