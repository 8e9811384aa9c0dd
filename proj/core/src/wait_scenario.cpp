#include "wait_scenario.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

namespace robust_search::detail {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

double stay_value(double p, double v, double delta, double kappa) {
    if (p >= 1.0) return v;
    const double den = 1.0 - delta * (1.0 - p);
    const double num = p * v - (1.0 - p) * delta * kappa;
    if (den <= 0.0) return num < 0.0 ? -kInf : v;
    return num / den;
}

double stop_ratio(double p, double y, double delta, double kappa) {
    if (kappa == 0.0) {
        if (p >= 1.0) return 1.0;
        return p / (1.0 - delta * (1.0 - p));
    }
    return stay_value(p, y, delta, kappa) / y;
}

double wait_threshold(double y, double z, double delta, double kappa) {
    if (!(z > y)) return kInf;
    return std::max(0.0, (y * (1.0 - delta) + delta * kappa) / (delta * (z - y)));
}

SigmaMin wait_min(double s, double y, double z, double uz, double delta, double kappa) {
    const double lo = wait_threshold(y, z, delta, kappa);
    if (!(lo <= 1.0)) return {};
    if (uz == -kInf && s < 1.0) return {-kInf, lo, true};

    // f = (a0 + a1 t)(c0 + c1 t) / ((b0 + b1 t)(e0 + e1 t)); the cubic terms of
    // f' cancel, leaving a quadratic for the interior critical points.
    const double a0 = s * y - (1.0 - s) * delta * kappa;
    const double a1 = (1.0 - s) * delta * uz;
    const double c0 = 1.0 - delta;
    const double c1 = delta;
    const double b0 = 1.0 - delta * (1.0 - s);
    const double b1 = delta * (1.0 - s);
    const double e0 = -delta * kappa;
    const double e1 = delta * z;

    auto f = [&](double t) {
        return (a0 + a1 * t) * (c0 + c1 * t) / ((b0 + b1 * t) * (e0 + e1 * t));
    };

    const double n0 = a0 * c0;
    const double n1 = a0 * c1 + a1 * c0;
    const double n2 = a1 * c1;
    const double d0 = b0 * e0;
    const double d1 = b0 * e1 + b1 * e0;
    const double d2 = b1 * e1;
    const double qa = n2 * d1 - n1 * d2;
    const double qb = 2.0 * (n2 * d0 - n0 * d2);
    const double qc = n1 * d0 - n0 * d1;

    std::array<double, 4> cand{lo, 1.0, -1.0, -1.0};
    const double scale = std::max({std::abs(qa), std::abs(qb), std::abs(qc)});
    if (scale > 0.0) {
        if (std::abs(qa) <= 1e-14 * scale) {
            if (qb != 0.0) cand[2] = -qc / qb;
        } else {
            const double disc = qb * qb - 4.0 * qa * qc;
            if (disc >= 0.0) {
                const double sq = std::sqrt(disc);
                const double q = -0.5 * (qb + std::copysign(sq, qb));
                cand[2] = q / qa;
                if (q != 0.0) cand[3] = qc / q;
            }
        }
    }

    SigmaMin best{kInf, lo, true};
    for (double t : cand) {
        if (!(t >= lo && t <= 1.0)) continue;
        const double v = f(t);
        if (v < best.value) best = {v, t, true};
    }
    return best;
}

double limit_ratio(double s, double w_inf, double delta) {
    if (s >= 1.0) return 0.0;
    return (1.0 - s) * w_inf * (1.0 - delta) / (1.0 - delta * (1.0 - s));
}

double largest_feasible(const std::function<double(double)>& ratio, double target,
                        double s_start, double tol) {
    s_start = std::clamp(s_start, 0.0, 1.0);
    if (ratio(1.0) >= target) return 1.0;
    double lo = s_start;
    if (ratio(lo) < target) {
        // Locate the peak of the quasiconcave ratio on [s_start, 1].
        const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
        double a = s_start;
        double b = 1.0;
        double x1 = b - inv_phi * (b - a);
        double x2 = a + inv_phi * (b - a);
        double f1 = ratio(x1);
        double f2 = ratio(x2);
        while (b - a > tol) {
            if (f1 < f2) {
                a = x1;
                x1 = x2;
                f1 = f2;
                x2 = a + inv_phi * (b - a);
                f2 = ratio(x2);
            } else {
                b = x2;
                x2 = x1;
                f2 = f1;
                x1 = b - inv_phi * (b - a);
                f1 = ratio(x1);
            }
            if (f1 >= target || f2 >= target) break;
        }
        if (f1 >= target) {
            lo = x1;
        } else if (f2 >= target) {
            lo = x2;
        } else {
            return -1.0;
        }
    }
    double hi = 1.0;
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        if (ratio(mid) >= target) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return lo;
}

}  // namespace robust_search::detail
