#pragma once

#include <cstdint>
#include <vector>

namespace turretlab::placement2d {

/// Angular placement of n radially attacking drones, relative to the turret
/// heading. All angles live in (-pi, pi].
struct AngularConfiguration {
    std::vector<double> angles;
    double epsilon = 0.0;
};

struct SweepResult {
    std::vector<int> visit_order;
    std::vector<double> per_leg;
    double total_length = 0.0;
};

/// Placement that maximizes the path of a greedy turret: the j-th drone sits
/// at sum_{i=0}^{j-1} (1/2)^(n-1-i) * pi - epsilon, wrapped. Requires
/// 0 < epsilon < (1/2)^(n-1) * pi.
AngularConfiguration greedy_spacing(int n, double epsilon);

/// Symmetric doubling placement {+-a, +-3a, +-7a, ...} with
/// a = 2*pi / (2^ceil(n/2) + 2^(floor(n/2)+1) - 2); odd n adds a drone at pi.
AngularConfiguration doubling_spacing(int n);

/// The doubling-spacing base angle alone.
double doubling_alpha_opt(int n);

/// Turret policy that always slews to the angularly nearest remaining drone,
/// ties broken counter-clockwise. Drones hold constant bearing.
SweepResult greedy_sweep(const AngularConfiguration& config);

/// Exact minimum angular path from heading 0 through all bearings (open
/// path), via bitmask dynamic programming. n <= 22.
SweepResult optimal_sweep(const AngularConfiguration& config);

/// One random trial: n bearings drawn i.i.d. uniform on (-pi, pi], both
/// sweep policies evaluated. Deterministic per seed.
struct TrialResult {
    double greedy_len = 0.0;
    double optimal_len = 0.0;
};
TrialResult random_trial(int n, std::uint64_t seed);

}  // namespace turretlab::placement2d
