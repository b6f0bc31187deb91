#include "turretlab/placement2d.hpp"

#include <cmath>

#include "turretlab/angles.hpp"
#include "turretlab/errors.hpp"
#include "turretlab/held_karp.hpp"
#include "turretlab/rng.hpp"

namespace turretlab::placement2d {

namespace {

// Exact greedy ties would require bit-equal doubles; the structured
// placements produce gaps that are equal only up to rounding.
constexpr double kTieEps = 1e-9;

double circular_distance(double a, double b) {
    return std::abs(wrap_angle(a - b));
}

}  // namespace

AngularConfiguration greedy_spacing(int n, double epsilon) {
    if (n < 1) throw OutOfParameterRange("greedy_spacing: n must be >= 1");
    double limit = std::pow(0.5, n - 1) * kPi;
    if (epsilon <= 0.0 || epsilon >= limit) {
        throw InvalidEpsilon("greedy_spacing: epsilon outside (0, (1/2)^(n-1)*pi)");
    }
    AngularConfiguration config;
    config.epsilon = epsilon;
    config.angles.reserve(n);
    double cumulative = 0.0;
    for (int j = 1; j <= n; ++j) {
        cumulative += std::pow(0.5, n - j) * kPi;  // i = j-1 term
        config.angles.push_back(wrap_angle(cumulative - epsilon));
    }
    return config;
}

double doubling_alpha_opt(int n) {
    double denom = std::pow(2.0, std::ceil(n / 2.0)) +
                   std::pow(2.0, std::floor(n / 2.0) + 1.0) - 2.0;
    return kTwoPi / denom;
}

AngularConfiguration doubling_spacing(int n) {
    if (n < 1) throw OutOfParameterRange("doubling_spacing: n must be >= 1");
    double a = doubling_alpha_opt(n);
    AngularConfiguration config;
    config.angles.reserve(n);
    int pairs = n / 2;
    double pos = 0.0;
    for (int k = 1; k <= pairs; ++k) {
        pos = (std::pow(2.0, k) - 1.0) * a;  // a, 3a, 7a, ...
        config.angles.push_back(wrap_angle(pos));
        config.angles.push_back(wrap_angle(-pos));
    }
    if (n % 2 == 1) config.angles.push_back(kPi);
    return config;
}

SweepResult greedy_sweep(const AngularConfiguration& config) {
    const int n = static_cast<int>(config.angles.size());
    SweepResult result;
    result.visit_order.reserve(n);
    result.per_leg.reserve(n);

    std::vector<bool> visited(n, false);
    double heading = 0.0;
    for (int step = 0; step < n; ++step) {
        int pick = -1;
        double best = 0.0;
        bool best_ccw = false;
        for (int j = 0; j < n; ++j) {
            if (visited[j]) continue;
            double d = circular_distance(config.angles[j], heading);
            bool ccw = wrap_angle(config.angles[j] - heading) > 0.0;
            if (pick < 0 || d < best - kTieEps ||
                (d < best + kTieEps && ccw && !best_ccw)) {
                pick = j;
                best = d;
                best_ccw = ccw;
            }
        }
        visited[pick] = true;
        result.visit_order.push_back(pick);
        result.per_leg.push_back(best);
        result.total_length += best;
        heading = config.angles[pick];
    }
    return result;
}

SweepResult optimal_sweep(const AngularConfiguration& config) {
    const int n = static_cast<int>(config.angles.size());
    if (n > 22) throw InstanceTooLarge("optimal_sweep: n > 22");

    std::vector<std::vector<double>> dist(n + 1, std::vector<double>(n + 1, 0.0));
    for (int i = 0; i <= n; ++i) {
        double ai = i == 0 ? 0.0 : config.angles[i - 1];
        for (int j = 0; j <= n; ++j) {
            double aj = j == 0 ? 0.0 : config.angles[j - 1];
            dist[i][j] = circular_distance(ai, aj);
        }
    }
    HeldKarpResult hk = held_karp_open_path(dist);

    SweepResult result;
    result.visit_order = hk.order;
    result.total_length = hk.total;
    double at = 0.0;
    for (int idx : hk.order) {
        result.per_leg.push_back(circular_distance(config.angles[idx], at));
        at = config.angles[idx];
    }
    return result;
}

TrialResult random_trial(int n, std::uint64_t seed) {
    if (n < 1) throw OutOfParameterRange("random_trial: n must be >= 1");
    Rng rng(seed);
    AngularConfiguration config;
    config.angles.reserve(n);
    for (int i = 0; i < n; ++i) config.angles.push_back(rng.uniform_angle());
    return {greedy_sweep(config).total_length, optimal_sweep(config).total_length};
}

}  // namespace turretlab::placement2d
