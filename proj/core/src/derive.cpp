#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <string>

#include "grid.hpp"
#include "parallel.hpp"
#include "ratio_internal.hpp"
#include "robust_search/error.hpp"
#include "robust_search/rules.hpp"
#include "wait_scenario.hpp"

namespace robust_search {
namespace {

// Step table under construction, stored from the top down.
struct DescendingTable {
    std::vector<double> knots;  // strictly descending
    std::vector<double> probs;

    double operator()(double z) const {
        // Largest knot <= z; the table is only queried above its lowest knot.
        const auto it = std::lower_bound(knots.begin(), knots.end(), z, std::greater<>());
        if (it == knots.end()) return probs.back();
        return probs[static_cast<std::size_t>(it - knots.begin())];
    }
};

}  // namespace

DerivedRule derive_rule(double r, double delta, const DeriveOptions& opts) {
    if (!std::isfinite(r) || !(r > 0.25) || r > 1.0) {
        throw ValidationError(
            "target ratio must lie in (1/4, 1]; at 1/4 or below the descent never terminates");
    }
    if (!std::isfinite(delta) || !(delta > 0.0) || !(delta < 1.0)) {
        throw ValidationError("delta must lie in (0, 1)");
    }
    if (opts.grid < 1 || opts.z_per_decade < 1 || opts.max_intervals < 1) {
        throw ValidationError("invalid derive options");
    }

    const CostModel cost{delta, 0.0};
    DescendingTable table{{delta}, {1.0}};
    DerivedRule out;
    out.target = r;
    out.x0 = delta;
    const double s_start = r * (1.0 - delta) / (1.0 - delta * r);

    auto rule_view = [&table, delta](double z) { return z >= delta ? 1.0 : table(z); };

    bool done = false;
    double top = delta;
    for (int k = 1; k <= opts.max_intervals && !done; ++k) {
        const double bottom = top * delta;
        const double h = (top - bottom) / opts.grid;
        std::vector<double> ys(static_cast<std::size_t>(opts.grid));
        for (int j = 0; j < opts.grid; ++j) ys[static_cast<std::size_t>(j)] = bottom + h * (opts.grid - 1 - j);

        // Every point of the interval only looks at z >= y / delta >= top, so
        // the interval can be solved in parallel.
        std::vector<double> found(ys.size(), -1.0);
        detail::parallel_for(ys.size(), [&](std::size_t i) {
            const double y = ys[i];
            detail::ZTable zt;
            if (y / delta <= 1.0) {
                zt.z = detail::geomgrid(y / delta, 1.0, opts.z_per_decade);
                zt.uz.resize(zt.z.size());
                for (std::size_t m = 0; m < zt.z.size(); ++m) {
                    zt.uz[m] = detail::stay_value(rule_view(zt.z[m]), zt.z[m], delta, 0.0);
                }
            }
            found[i] = detail::largest_feasible(
                [&](double s) { return detail::min_ratio(s, y, zt, cost); }, r, s_start, 1e-10);
        }, 1);

        for (std::size_t i = 0; i < ys.size(); ++i) {
            if (found[i] < 0.0) {
                done = true;
                break;
            }
            table.knots.push_back(ys[i]);
            table.probs.push_back(found[i]);
            out.x0 = ys[i];
        }
        out.intervals = k;
        top = bottom;
    }
    if (!done) throw ConfigError("derive_rule did not terminate within max_intervals");

    Piecewise pw;
    pw.knots.assign(table.knots.rbegin(), table.knots.rend());
    pw.probs.assign(table.probs.rbegin(), table.probs.rend());
    out.rule = StoppingRule(std::move(pw));
    return out;
}

void write_rule_csv(std::ostream& out, const DerivedRule& derived, int precision) {
    const auto* pw = std::get_if<Piecewise>(&derived.rule.family());
    if (pw == nullptr) throw ValidationError("derived rule is not a step table");
    const auto flags = out.flags();
    const auto prec = out.precision();
    out << std::setprecision(precision);
    out << "y_lo,y_hi,p\n";
    for (std::size_t i = 0; i < pw->knots.size(); ++i) {
        const double hi = i + 1 < pw->knots.size() ? pw->knots[i + 1] : 1.0;
        out << pw->knots[i] << ',' << hi << ',' << pw->probs[i] << '\n';
    }
    out.flags(flags);
    out.precision(prec);
}

}  // namespace robust_search
