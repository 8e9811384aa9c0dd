#include <algorithm>
#include <cmath>
#include <limits>

#include "grid.hpp"
#include "parallel.hpp"
#include "robust_search/error.hpp"
#include "robust_search/payoff.hpp"
#include "robust_search/verifier.hpp"

namespace robust_search {
namespace {

struct Interior {
    double ratio = std::numeric_limits<double>::infinity();
    TwoPoint env;
    double y = 0.0;
};

// Lotteries {w, z} with y < w < z. When w <= y the low outcome never moves
// the best-so-far value and the lottery behaves like {0, z}, which the
// binary slice already covers.
Interior interior_at(const StoppingRule& rule, double y, double xbar, const CostModel& cost,
                     const TwoPointOptions& opts, const std::vector<double>& sigmas) {
    Interior best;
    best.y = y;
    if (!(xbar > y)) return best;
    const std::vector<double> zs = detail::geomspace(y * (1.0 + 1e-3), xbar, opts.z_points);
    for (double z : zs) {
        if (!(z > y)) continue;
        for (int k = 1; k <= opts.w_points; ++k) {
            const double t = static_cast<double>(k) / (opts.w_points + 1);
            const double w = y * std::pow(z / y, t);
            if (!(w > y && w < z)) continue;
            for (double sigma : sigmas) {
                const Discrete d{{w, z}, {1.0 - sigma, sigma}};
                const double u = rule_value_discrete(rule, d, y, cost);
                const double v = optimal_value(TwoPoint{w, z, sigma}, y, cost);
                const double r = u / v;
                if (r < best.ratio) {
                    best.ratio = r;
                    best.env = TwoPoint{w, z, sigma};
                }
            }
        }
    }
    return best;
}

}  // namespace

TwoPointReport twopoint_ratio(const StoppingRule& rule, double x0, double xbar,
                              const CostModel& cost, const TwoPointOptions& opts) {
    cost.validate();
    if (cost.kappa != 0.0) throw UnsupportedError("two-point search assumes kappa = 0");
    if (!std::isfinite(xbar)) throw UnsupportedError("two-point search needs a bounded xbar");
    if (opts.interior_y_points < 1 || opts.w_points < 1 || opts.z_points < 2 ||
        opts.sigma_points < 2) {
        throw ValidationError("invalid two-point grid options");
    }

    const RatioReport binary =
        performance_ratio(rule, x0, xbar, cost, EnvironmentClass::general, opts.grid);

    TwoPointReport out;
    out.binary_ratio = binary.ratio;
    out.ratio = binary.ratio;
    out.argmin_env = TwoPoint{0.0, binary.argmin_env.z, binary.argmin_env.sigma};
    out.argmin_y = binary.argmin_y;
    out.scenario = binary.scenario;

    const std::vector<double> ys = detail::geomspace(x0, xbar, opts.interior_y_points);
    const std::vector<double> sigmas = detail::geomspace(1e-6, 1.0, opts.sigma_points);
    std::vector<Interior> found(ys.size());
    detail::parallel_for(ys.size(), [&](std::size_t i) {
        found[i] = interior_at(rule, ys[i], xbar, cost, opts, sigmas);
    }, 1);
    for (const auto& f : found) {
        out.interior_ratio = std::min(out.interior_ratio, f.ratio);
        if (f.ratio < out.ratio - opts.grid.tie_tolerance) {
            out.ratio = f.ratio;
            out.argmin_env = f.env;
            out.argmin_y = f.y;
            out.scenario = Scenario::wait;
        }
    }
    return out;
}

}  // namespace robust_search
