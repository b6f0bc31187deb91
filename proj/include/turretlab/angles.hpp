#pragma once

#include <cmath>
#include <numbers>

namespace turretlab {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Wrap an angle into (-pi, pi].
inline double wrap_angle(double a) {
    double m = std::fmod(a + kPi, kTwoPi);
    if (m <= 0.0) m += kTwoPi;
    return m - kPi;
}

/// Wrap an angle into [0, 2*pi).
inline double wrap_angle_2pi(double a) {
    double m = std::fmod(a, kTwoPi);
    if (m < 0.0) m += kTwoPi;
    return m;
}

inline double deg_to_rad(double deg) { return deg * kPi / 180.0; }
inline double rad_to_deg(double rad) { return rad * 180.0 / kPi; }

}  // namespace turretlab
