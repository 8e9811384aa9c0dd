#pragma once

#include <cmath>
#include <vector>

namespace robust_search::detail {

/// n points from lo to hi (inclusive) with constant ratio.
inline std::vector<double> geomspace(double lo, double hi, int n) {
    std::vector<double> out;
    if (n <= 1 || !(hi > lo)) {
        out.push_back(lo);
        return out;
    }
    out.reserve(static_cast<std::size_t>(n));
    const double step = std::log(hi / lo) / (n - 1);
    for (int i = 0; i < n; ++i) out.push_back(lo * std::exp(step * i));
    out.back() = hi;
    return out;
}

/// Geometric grid with `per_decade` points per factor of 10, endpoints kept.
inline std::vector<double> geomgrid(double lo, double hi, int per_decade) {
    if (!(hi > lo)) return {lo};
    const double decades = std::log10(hi / lo);
    const int n = std::max(2, static_cast<int>(std::ceil(decades * per_decade)) + 1);
    return geomspace(lo, hi, n);
}

}  // namespace robust_search::detail
