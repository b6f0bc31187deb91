#pragma once

#include <optional>

#include "turretlab/vec.hpp"

namespace turretlab::geometry2d {

/// Rate-limited 2D turret. Analysis is normalized to a traverse rate of
/// 1 rad/s; the public entry points accept a physical rate and rescale.
struct Turret2D {
    double phi = 0.0;        ///< heading, wrapped to (-pi, pi]
    double omega_max = 1.0;  ///< max traverse rate, rad/s (> 0)
};

struct Drone2D {
    Vec2 p;           ///< position, plane units
    double v = 1.0;   ///< speed normalized by the traverse rate (> 0)
};

/// Drone geometry relative to the turret.
struct PolarRelative {
    double r = 0.0;      ///< distance from the turret
    double theta = 0.0;  ///< world bearing of the drone, rad
    double alpha = 0.0;  ///< signed turret-to-drone angle in [-pi, pi]
};

enum class Fate { ReachesSafety, Destroyed };

struct InterceptResult {
    Fate fate = Fate::ReachesSafety;
    std::optional<double> t_d;  ///< death time, present iff Destroyed
    std::optional<Vec2> p_d;    ///< death position, present iff Destroyed
};

enum class EvasionStrategy { Radial, Tangent };

/// Polar geometry of `drone` relative to `turret`.
/// Throws DegenerateAtOrigin when the drone sits exactly on the turret.
PolarRelative relative_geometry(const Turret2D& turret, const Drone2D& drone);

/// Radius of the radially-survivable region at bearing offset `alpha`:
/// v * (1 + |alpha|).
double radial_region_boundary(double alpha, double v);

/// Point where the line of flight from p0 meets the safety circle of radius
/// v tangentially, on the side selected by sign(alpha) (ties at alpha == 0
/// break counter-clockwise). Throws AlreadySafe when ||p0|| < v.
Vec2 tangent_point(const Vec2& p0, double alpha, double v);

/// Signed tangent-meet angle beta = sign(alpha) * acos(v / ||p0||).
double tangent_meet_angle(double r, double alpha, double v);

/// Fate of a drone starting at p0 with bearing offset alpha, flying the given
/// strategy against a unit-rate turret sweeping the shorter arc.
/// Requires ||p0|| > v.
InterceptResult intercept(const Vec2& p0, double alpha, double v,
                          EvasionStrategy strategy);

/// Starting position on the tangent-survivable boundary for sweep parameter
/// gamma, turret heading phi, drone speed v. |gamma| must not exceed
/// gamma_max(). Throws OutOfParameterRange otherwise.
Vec2 survivable_boundary(double gamma, double phi, double v);

/// Root of tan(g) = g in (pi, 3*pi/2); the largest usable boundary parameter.
double gamma_max();

/// Boundary parameter gamma >= 0 whose survivable_boundary point sits at
/// bearing offset alpha in [0, pi] (solves gamma - atan(gamma) = alpha).
double gamma_for_alpha(double alpha);

}  // namespace turretlab::geometry2d
