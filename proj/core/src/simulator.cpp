#include "robust_search/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>

#include "parallel.hpp"
#include "robust_search/error.hpp"

namespace robust_search {
namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// splitmix64 sequence whose starting counter is a hash of (seed, path).
class Stream {
public:
    Stream(std::uint64_t seed, std::uint64_t path) : state_(mix(seed ^ mix(path + kGolden))) {}

    double uniform() {
        state_ += kGolden;
        return static_cast<double>(mix(state_) >> 11) * 0x1.0p-53;
    }

private:
    std::uint64_t state_;
};

double draw(const PureEnvironment& env, Stream& rng) {
    const double u = rng.uniform();
    if (const auto* b = std::get_if<Binary>(&env)) return u < b->sigma ? b->z : 0.0;
    if (const auto* t = std::get_if<TwoPoint>(&env)) return u < t->sigma ? t->z : t->w;
    const auto& d = std::get<Discrete>(env);
    double cum = 0.0;
    std::size_t last = 0;
    for (std::size_t i = 0; i < d.support.size(); ++i) {
        if (d.probs[i] <= 0.0) continue;
        last = i;
        cum += d.probs[i];
        if (u < cum) return d.support[i];
    }
    return d.support[last];
}

const PureEnvironment& pick(const Environment& env, Stream& rng, PureEnvironment& holder) {
    if (const auto* m = std::get_if<Mixture>(&env)) {
        const double u = rng.uniform();
        double cum = 0.0;
        std::size_t chosen = 0;
        for (std::size_t i = 0; i < m->weights.size(); ++i) {
            if (m->weights[i] <= 0.0) continue;
            chosen = i;
            cum += m->weights[i];
            if (u < cum) break;
        }
        return m->components[chosen];
    }
    holder = as_pure(env);
    return holder;
}

void check_inputs(const Environment& env, const StoppingRule& rule, double x0,
                  const CostModel& cost) {
    cost.validate();
    validate(env);
    validate(rule);
    if (!std::isfinite(x0) || x0 < 0.0) throw ValidationError("x0 must be finite and >= 0");
}

PathResult run(const Environment& env, const StoppingRule& rule, double x0, const CostModel& cost,
               long cap, std::uint64_t seed, std::uint64_t path_id) {
    Stream rng(seed, path_id);
    PureEnvironment holder = Binary{};
    const PureEnvironment& pure = pick(env, rng, holder);

    PathResult out;
    out.path_id = path_id;
    double y = x0;
    double discount = 1.0;
    double paid = 0.0;
    long t = 0;
    for (;; ++t) {
        if (t == cap) {
            out.truncated = true;
            break;
        }
        if (rng.uniform() < rule(y)) break;
        discount *= cost.delta;
        paid += discount * cost.kappa;
        y = std::max(y, draw(pure, rng));
    }
    out.stop_round = t;
    out.y_at_stop = y;
    out.payoff = discount * y - paid;
    return out;
}

}  // namespace

long round_cap(const CostModel& cost) {
    cost.validate();
    // With delta = 1 every round costs kappa > 0; a million rounds is far
    // past any rule worth simulating.
    if (cost.delta >= 1.0) return 1'000'000;
    return static_cast<long>(std::ceil(std::log(1e-12) / std::log(cost.delta)));
}

PathResult simulate_path(const Environment& env, const StoppingRule& rule, double x0,
                         const CostModel& cost, std::uint64_t seed, std::uint64_t path_id) {
    check_inputs(env, rule, x0, cost);
    return run(env, rule, x0, cost, round_cap(cost), seed, path_id);
}

std::vector<PathResult> simulate_paths(const Environment& env, const StoppingRule& rule, double x0,
                                       const CostModel& cost, std::uint64_t n_paths,
                                       std::uint64_t seed) {
    check_inputs(env, rule, x0, cost);
    const long cap = round_cap(cost);
    std::vector<PathResult> out(n_paths);
    detail::parallel_for(out.size(), [&](std::size_t i) {
        out[i] = run(env, rule, x0, cost, cap, seed, i);
    }, 1024);
    return out;
}

Estimate estimate_value(const Environment& env, const StoppingRule& rule, double x0,
                        const CostModel& cost, std::uint64_t n_paths, std::uint64_t seed) {
    if (n_paths < 100) throw ValidationError("estimate_value needs at least 100 paths");
    const std::vector<PathResult> paths = simulate_paths(env, rule, x0, cost, n_paths, seed);
    // Sums run in path order so the result is independent of scheduling.
    double sum = 0.0;
    for (const auto& p : paths) sum += p.payoff;
    const double n = static_cast<double>(n_paths);
    const double mean = sum / n;
    double ss = 0.0;
    for (const auto& p : paths) ss += (p.payoff - mean) * (p.payoff - mean);
    return {mean, std::sqrt(ss / (n - 1.0) / n), n_paths, seed};
}

void write_paths_csv(std::ostream& out, const std::vector<PathResult>& paths, int precision) {
    const auto flags = out.flags();
    const auto prec = out.precision();
    out << std::setprecision(precision);
    out << "path_id,stop_round,y_at_stop,payoff\n";
    for (const auto& p : paths) {
        out << p.path_id << ',' << p.stop_round << ',' << p.y_at_stop << ',' << p.payoff << '\n';
    }
    out.flags(flags);
    out.precision(prec);
}

}  // namespace robust_search
