#pragma once

#include <optional>

#include "turretlab/angles.hpp"
#include "turretlab/vec.hpp"

namespace turretlab {

/// Pan-tilt turret. Rates default to the representative CIWS traverse rate
/// of 115 deg/s on both axes; joint limits are off by default.
struct Turret3D {
    double pan = 0.0;
    double tilt = 0.0;
    double pan_rate_max = deg_to_rad(115.0);
    double tilt_rate_max = deg_to_rad(115.0);
    double kill_cone_half_angle = deg_to_rad(0.5);
    std::optional<double> tilt_min;  ///< rad, enables the lower cone when set
    std::optional<double> tilt_max;  ///< rad, enables the upper cone when set

    /// Gun direction for the current pan/tilt (tilt measured from horizon).
    Vec3 gun_direction() const {
        double c = std::cos(tilt);
        return {c * std::cos(pan), c * std::sin(pan), std::sin(tilt)};
    }
};

}  // namespace turretlab
