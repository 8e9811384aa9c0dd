#include "robust_search/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>
#include <string>

#include "grid.hpp"
#include "parallel.hpp"
#include "ratio_internal.hpp"
#include "robust_search/error.hpp"
#include "robust_search/payoff.hpp"
#include "wait_scenario.hpp"

namespace robust_search {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_point_inputs(double y, double xbar) {
    if (!std::isfinite(y) || !(y > 0.0)) {
        throw ValidationError("best-so-far value must be finite and > 0");
    }
    if (std::isnan(xbar) || !(xbar > 0.0)) throw ValidationError("xbar must be > 0");
}

void check_grid(const GridOptions& g) {
    if (g.y_points < 1 || g.z_per_decade < 1 || !(g.z_cap > 1.0) || !(g.y_cap >= 1.0) ||
        !(g.tie_tolerance >= 0.0)) {
        throw ValidationError("invalid grid options");
    }
}

PointRatio point_unchecked(const StoppingRule& rule, double y, double xbar, const CostModel& cost,
                           EnvironmentClass cls, const GridOptions& grid) {
    const bool unbounded = std::isinf(xbar);
    const double z_hi = unbounded ? y * grid.z_cap : xbar;
    const detail::ZTable table = detail::z_table(rule, y, z_hi, cost, cls, grid.z_per_decade);
    const double s = rule(y);
    const double limit = unbounded ? detail::unbounded_limit(rule, s, cost, cls) : kInf;
    return detail::evaluate_point(s, y, table, cost, limit, grid.tie_tolerance);
}

}  // namespace

namespace detail {

ZTable z_table(const StoppingRule& rule, double y, double z_hi, const CostModel& cost,
               EnvironmentClass cls, int per_decade) {
    ZTable t;
    const double z_lo = y / cost.delta + cost.kappa;
    if (!(z_hi >= z_lo)) return t;
    t.z = geomgrid(z_lo, z_hi, per_decade);
    t.uz.resize(t.z.size());
    for (std::size_t i = 0; i < t.z.size(); ++i) {
        t.uz[i] = cls == EnvironmentClass::binary
                      ? t.z[i]
                      : stay_value(rule(t.z[i]), t.z[i], cost.delta, cost.kappa);
    }
    return t;
}

PointRatio evaluate_point(double s, double y, const ZTable& table, const CostModel& cost,
                          double limit, double tie) {
    const double stop = stop_ratio(s, y, cost.delta, cost.kappa);

    double wait_best = kInf;
    std::vector<SigmaMin> mins(table.z.size());
    for (std::size_t i = 0; i < table.z.size(); ++i) {
        mins[i] = wait_min(s, y, table.z[i], table.uz[i], cost.delta, cost.kappa);
        if (mins[i].feasible) wait_best = std::min(wait_best, mins[i].value);
    }
    const double best = std::min({stop, wait_best, limit});

    PointRatio out{y, best, 0.0, 0.0, Scenario::stop};
    if (wait_best <= best + tie) {
        for (std::size_t i = table.z.size(); i-- > 0;) {
            if (mins[i].feasible && mins[i].value <= best + tie) {
                out.z = table.z[i];
                out.sigma = mins[i].sigma;
                out.scenario = Scenario::wait;
                break;
            }
        }
    } else if (limit <= best + tie) {
        out.z = kInf;
        out.sigma = 0.0;
        out.scenario = Scenario::limit;
    }
    return out;
}

double min_ratio(double s, double y, const ZTable& table, const CostModel& cost) {
    double best = stop_ratio(s, y, cost.delta, cost.kappa);
    for (std::size_t i = 0; i < table.z.size(); ++i) {
        const SigmaMin m = wait_min(s, y, table.z[i], table.uz[i], cost.delta, cost.kappa);
        if (m.feasible) best = std::min(best, m.value);
    }
    return best;
}

double unbounded_limit(const StoppingRule& rule, double s, const CostModel& cost,
                       EnvironmentClass cls) {
    double w_inf = 1.0;
    if (cls == EnvironmentClass::general) {
        const double p = rule.limit();
        if (p >= 1.0) {
            w_inf = 1.0;
        } else if (cost.delta >= 1.0 && p <= 0.0) {
            w_inf = -kInf;
        } else {
            w_inf = p / (1.0 - cost.delta * (1.0 - p));
        }
    }
    if (cost.delta >= 1.0) return w_inf < 0.0 && s < 1.0 ? -kInf : 0.0;
    return limit_ratio(s, w_inf, cost.delta);
}

}  // namespace detail

const char* to_string(Scenario s) {
    switch (s) {
        case Scenario::stop: return "stop";
        case Scenario::wait: return "wait";
        case Scenario::limit: return "limit";
    }
    return "unknown";
}

const char* to_string(EnvironmentClass c) {
    return c == EnvironmentClass::binary ? "binary" : "general";
}

PointRatio pointwise_ratio(const StoppingRule& rule, double y, double xbar, const CostModel& cost,
                           EnvironmentClass cls, const GridOptions& grid) {
    cost.validate();
    require_monotone(rule);
    check_point_inputs(y, xbar);
    check_grid(grid);
    return point_unchecked(rule, y, xbar, cost, cls, grid);
}

RatioReport performance_ratio(const StoppingRule& rule, double x0, double xbar,
                              const CostModel& cost, EnvironmentClass cls,
                              const GridOptions& grid) {
    cost.validate();
    require_monotone(rule);
    check_point_inputs(x0, xbar);
    check_grid(grid);
    if (x0 > xbar) throw ValidationError("x0 must not exceed xbar");

    const bool unbounded = std::isinf(xbar);
    std::vector<double> ys;
    if (cls == EnvironmentClass::binary) {
        ys = {x0};
    } else {
        ys = detail::geomspace(x0, unbounded ? x0 * grid.y_cap : xbar, grid.y_points);
    }

    RatioReport report;
    report.curve.resize(ys.size());
    detail::parallel_for(ys.size(), [&](std::size_t i) {
        report.curve[i] = point_unchecked(rule, ys[i], xbar, cost, cls, grid);
    }, 1);

    if (unbounded && cls == EnvironmentClass::general) {
        // Best-so-far values beyond the grid: the rule is at its limit and
        // the additive cost is negligible relative to y.
        const double s = rule.limit();
        const double stop = detail::stop_ratio(s, 1.0, cost.delta, 0.0);
        const double lim = detail::unbounded_limit(rule, s, cost, cls);
        PointRatio far{kInf, std::min(stop, lim), kInf, 0.0, Scenario::limit};
        if (stop < lim - grid.tie_tolerance) {
            far.z = 0.0;
            far.scenario = Scenario::stop;
        }
        report.curve.push_back(far);
    }

    double best = kInf;
    for (const auto& p : report.curve) best = std::min(best, p.ratio);
    report.ratio = best;
    for (const auto& p : report.curve) {
        if (p.ratio <= best + grid.tie_tolerance) {
            report.argmin_y = p.y;
            report.argmin_env = Binary{p.z, p.sigma};
            report.scenario = p.scenario;
            break;
        }
    }
    for (std::size_t i = 1; i < ys.size(); ++i) {
        if (report.curve[i].ratio < report.curve[i - 1].ratio - grid.tie_tolerance) {
            report.monotone_ratio = false;
            break;
        }
    }
    return report;
}

void write_curve_csv(std::ostream& out, const RatioReport& report, int precision) {
    const auto flags = out.flags();
    const auto prec = out.precision();
    out << std::setprecision(precision);
    out << "y,ratio,argmin_z,argmin_sigma,scenario\n";
    for (const auto& p : report.curve) {
        out << p.y << ',' << p.ratio << ',' << p.z << ',' << p.sigma << ',' << to_string(p.scenario)
            << '\n';
    }
    out.flags(flags);
    out.precision(prec);
}

double deterministic_bound(double x0, double xbar, const CostModel& cost) {
    cost.validate();
    check_point_inputs(x0, xbar);
    if (std::isinf(xbar)) return 0.0;
    return x0 / std::max(x0, cost.delta * (xbar - cost.kappa));
}

DeterministicCheck deterministic_bound_check(double cutoff, double x0, double xbar,
                                             const CostModel& cost, const GridOptions& grid) {
    const StoppingRule rule = Cutoff{cutoff};
    DeterministicCheck out;
    out.ratio = performance_ratio(rule, x0, xbar, cost, EnvironmentClass::general, grid).ratio;
    out.bound = deterministic_bound(x0, xbar, cost);
    out.holds = out.ratio <= out.bound + 1e-6;
    return out;
}

HistoryClosure history_closure_ratio(const StoppingRule& rule, double x0,
                                     const std::vector<double>& history, double xbar,
                                     const CostModel& cost, double eps, int z_points,
                                     int sigma_points) {
    cost.validate();
    require_monotone(rule);
    check_point_inputs(x0, xbar);
    if (std::isinf(xbar)) throw UnsupportedError("history closure needs a bounded xbar");
    if (!(eps > 0.0 && eps < 1.0)) throw ValidationError("eps must lie in (0, 1)");
    double y = x0;
    for (double h : history) {
        if (!(h >= 0.0) || h > xbar) throw ValidationError("history values must lie in [0, xbar]");
        y = std::max(y, h);
    }
    std::vector<double> seen = history;
    std::sort(seen.begin(), seen.end());
    seen.erase(std::unique(seen.begin(), seen.end()), seen.end());

    std::vector<double> zs = detail::geomspace(std::min(y, xbar) * 0.5, xbar, z_points);
    std::vector<double> sigmas = detail::geomspace(1e-6, 1.0, sigma_points);
    sigmas.insert(sigmas.begin(), 0.0);

    HistoryClosure out{kInf, kInf};
    for (double z : zs) {
        for (double sigma : sigmas) {
            const Binary b{z, sigma};
            const double ub = rule_value_binary(rule, b, y, cost);
            out.binary_ratio = std::min(out.binary_ratio, ub / optimal_value(b, y, cost));

            // Put eps mass on every observed value so the history has
            // positive probability under the perturbed environment.
            std::vector<std::pair<double, double>> atoms{{0.0, (1.0 - sigma) * (1.0 - eps)},
                                                         {z, sigma * (1.0 - eps)}};
            for (double h : seen) atoms.emplace_back(h, eps / static_cast<double>(seen.size()));
            std::sort(atoms.begin(), atoms.end());
            Discrete d;
            for (const auto& [x, p] : atoms) {
                if (!d.support.empty() && d.support.back() == x) {
                    d.probs.back() += p;
                } else {
                    d.support.push_back(x);
                    d.probs.push_back(p);
                }
            }
            if (seen.empty()) d = to_discrete(b);
            const double ud = rule_value_discrete(rule, d, y, cost);
            out.consistent_ratio = std::min(out.consistent_ratio, ud / optimal_value(d, y, cost));
        }
    }
    return out;
}

}  // namespace robust_search
