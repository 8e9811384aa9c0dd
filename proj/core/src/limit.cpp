#include <algorithm>
#include <cmath>

#include "grid.hpp"
#include "robust_search/error.hpp"
#include "robust_search/rules.hpp"
#include "robust_search/verifier.hpp"

namespace robust_search {

bool bounded_rule_attains(double x0, double delta, const LOptions& opts) {
    const double target = binary_robust_ratio(x0, delta);
    const StoppingRule rule = bounded_robust_rule(x0, 1.0, delta);
    const TwoPointReport rep = twopoint_ratio(rule, x0, 1.0, CostModel{delta, 0.0}, opts.twopoint);
    return rep.ratio >= target - opts.tolerance;
}

LResult compute_L(double delta, const LOptions& opts) {
    if (!std::isfinite(delta) || !(delta > 0.0) || !(delta < 1.0)) {
        throw ValidationError("delta must lie in (0, 1)");
    }
    if (!(opts.resolution > 0.0) || opts.scan_points < 2) {
        throw ValidationError("invalid compute-L options");
    }
    LResult out;
    auto attains = [&](double x0) {
        ++out.evaluations;
        return bounded_rule_attains(x0, delta, opts);
    };

    // Scan downward from delta on a log grid; the first failure brackets L.
    const double floor = std::min(opts.resolution, delta / 2.0);
    const std::vector<double> scan = detail::geomspace(floor, delta, opts.scan_points);
    double hi = delta;
    double lo = -1.0;
    for (std::size_t i = scan.size(); i-- > 0;) {
        if (attains(scan[i])) {
            hi = scan[i];
        } else {
            lo = scan[i];
            break;
        }
    }
    if (lo < 0.0) {
        out.L = hi;
        return out;
    }
    while (hi - lo > opts.resolution) {
        const double mid = 0.5 * (lo + hi);
        if (attains(mid)) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    out.L = hi;
    return out;
}

}  // namespace robust_search
