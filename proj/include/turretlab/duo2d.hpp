#pragma once

#include <optional>

#include "turretlab/vec.hpp"

namespace turretlab::duo2d {

/// Two drones against a unit-rate turret; drone 2 is the payload whose
/// survival defines feasibility, drone 1 is sacrificed to stretch the sweep.
/// Radii are in multiples of the drone speed v (analysis units: v = 1,
/// omega = 1).
enum class Strategy { Radial, Tangent, Hybrid, Transition };

enum class SpinDir : int { CW = -1, CCW = +1 };

struct DuoScenario {
    double alpha1 = 0.0;  ///< drone 1 bearing, in [0, pi]
    Strategy strategy = Strategy::Radial;
    double r_over_v = 2.0;  ///< common starting radius, multiples of v
};

struct DuoOutcome {
    std::optional<int> survivor;                  ///< 1 or 2
    std::optional<double> drone1_death_bearing;   ///< beta, world bearing
    bool r_feasible = false;                      ///< drone 2 reached safety
};

struct DuoParams {
    double dt = 1e-4;
    /// Overrides the turret's direction choice when drone 2 sits exactly
    /// behind it at drone 1's death (default: keep spinning the same way).
    std::optional<SpinDir> post_death_spin;
    /// Overrides the transition strategy's drone-1 heading (world angle);
    /// by default the heading is optimized per alpha1.
    std::optional<double> transition_heading;
};

/// Death angle beta of the stay-alive line: the firing ray at angle beta is
/// tangent to drone 1's reachable disc of radius v*beta, so
/// alpha1 = beta - asin(beta / r). Solved by bracketed bisection; beta is
/// also the death time. Throws NumericalFailure when no tangency exists
/// (the drone outruns the sweep at small r).
double stay_alive_beta(double alpha1, double r_over_v);

/// Straight-line aim point of the stay-alive run: the tangency point of the
/// reachable disc on the firing ray at angle beta.
Vec2 stay_alive_death_point(double alpha1, double r_over_v);

DuoOutcome evaluate_duo(const DuoScenario& scenario, const DuoParams& params = {});

/// Largest feasible starting radius (multiples of v) for the strategy at
/// bearing alpha1, by bisection on evaluate_duo to 1e-4 resolution.
double r_max(double alpha1, Strategy strategy, const DuoParams& params = {});

/// Drone-1 heading (world angle, w.r.t. the turret's initial orientation)
/// that maximizes the transition-strategy r_max at alpha1, by golden-section
/// search.
double transition_angle(double alpha1, const DuoParams& params = {});

}  // namespace turretlab::duo2d
