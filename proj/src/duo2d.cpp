#include "turretlab/duo2d.hpp"

#include <cmath>

#include "turretlab/angles.hpp"
#include "turretlab/errors.hpp"

namespace turretlab::duo2d {

namespace {

// Analysis units: v = 1, omega = 1, so time, angle and the turret path
// length coincide and radii are in multiples of v.
constexpr double kSafetyEps = 1e-12;
constexpr double kAlignEps = 1e-9;
constexpr double kAntipodalTieTol = 1e-3;

struct DroneState {
    Vec2 pos;
    bool alive = true;
    bool safe = false;
    bool straight = false;       // straight-line mode vs radial-in
    Vec2 dir;                    // unit direction when straight
    std::optional<Vec2> target;  // landing point when straight
    double gap_prev = 0.0;       // wrap(bearing - heading) after last step
};

void commit_straight(DroneState& d, const Vec2& target) {
    d.straight = true;
    d.target = target;
    Vec2 delta = target - d.pos;
    double len = delta.norm();
    d.dir = len > 0.0 ? delta / len : Vec2{1.0, 0.0};
}

void commit_heading(DroneState& d, double heading) {
    d.straight = true;
    d.target.reset();
    d.dir = unit_at(heading);
}

/// Tangent point on the unit safety circle from pos, on the given side
/// (+1 CCW of the bearing, -1 CW).
Vec2 tangent_target(const Vec2& pos, int side) {
    double r = pos.norm();
    double beta = std::acos(std::min(1.0, 1.0 / r));
    return unit_at(pos.bearing() + side * beta);
}

void step_drone(DroneState& d, double dt) {
    if (!d.alive || d.safe) return;
    if (!d.straight) {
        double r = d.pos.norm();
        if (r > 0.0) d.pos += (-dt / r) * d.pos;
        return;
    }
    if (d.target) {
        double rem = (*d.target - d.pos).norm();
        if (rem <= dt) {
            // Land exactly; a tangent-point target sits on the safety circle.
            d.pos = *d.target;
            d.straight = false;
            d.target.reset();
            return;
        }
    }
    d.pos += dt * d.dir;
}

/// Positive angular distance from heading to bearing going in `spin`
/// direction.
double gap_along(double bearing, double heading, int spin) {
    double g = wrap_angle(bearing - heading);
    if (spin > 0) return g >= 0.0 ? g : g + kTwoPi;
    return g <= 0.0 ? -g : kTwoPi - g;
}

struct SimResult {
    bool drone1_died = false;
    double death_time = 0.0;
    double death_bearing = 0.0;
    Vec2 death_pos;
    bool drone1_safe = false;
    bool drone2_died = false;
    bool drone2_safe = false;
};

/// Core phased engagement: the turret pursues drone 1 until it resolves,
/// then turns on drone 2 along the shorter arc (exact antipodal ties keep
/// the current spin unless overridden). Drone 2's evasion commitment at the
/// hand-off is strategy-specific and handled by `on_drone1_resolved`.
template <typename Hook>
SimResult run_phased(DroneState& d1, DroneState& d2, double dt,
                     const DuoParams& params, Hook on_drone1_resolved,
                     double t_limit, bool with_payload = true) {
    SimResult out;
    double heading = 0.0;
    int spin = 1;  // drone 1 sits at alpha1 >= 0
    int phase = 1;
    d1.gap_prev = wrap_angle(d1.pos.bearing() - heading);
    d2.gap_prev = wrap_angle(d2.pos.bearing() - heading);

    double t = 0.0;
    while (t < t_limit) {
        step_drone(d1, dt);
        if (with_payload) step_drone(d2, dt);

        DroneState& target = phase == 1 ? d1 : d2;
        if (target.alive && !target.safe) {
            double d = gap_along(target.pos.bearing(), heading, spin);
            heading = wrap_angle(heading + spin * std::min(dt, d));
        }
        t += dt;

        for (DroneState* d : {&d1, &d2}) {
            if (d == &d2 && !with_payload) continue;
            if (!d->alive || d->safe) continue;
            // Survival is closed: the safety check precedes the kill check.
            if (d->pos.norm() <= 1.0 + kSafetyEps) {
                d->safe = true;
                continue;
            }
            double g = wrap_angle(d->pos.bearing() - heading);
            bool crossed = std::abs(g) <= kAlignEps ||
                           ((g > 0.0) != (d->gap_prev > 0.0) &&
                            std::abs(g - d->gap_prev) < kPi);
            if (crossed) {
                d->alive = false;
                if (d == &d1) {
                    out.drone1_died = true;
                    out.death_time = t;
                    out.death_bearing = heading;
                    out.death_pos = d->pos;
                } else {
                    out.drone2_died = true;
                }
            }
            d->gap_prev = g;
        }
        out.drone1_safe = d1.safe;
        out.drone2_safe = d2.safe;

        if (!with_payload) {
            if (!d1.alive || d1.safe) break;
            continue;
        }
        if (out.drone2_died || d2.safe) break;
        if (phase == 1 && (!d1.alive || d1.safe)) {
            phase = 2;
            // Direction onto drone 2: shorter arc, antipodal tie keeps spin.
            double g2 = wrap_angle(d2.pos.bearing() - heading);
            if (std::abs(std::abs(g2) - kPi) <= kAntipodalTieTol) {
                if (params.post_death_spin) {
                    spin = static_cast<int>(*params.post_death_spin);
                }
                // else: keep the current spin
            } else {
                spin = g2 >= 0.0 ? 1 : -1;
            }
            on_drone1_resolved(d2, spin);
            d2.gap_prev = wrap_angle(d2.pos.bearing() - heading);
        }
    }
    return out;
}

double drone2_start_bearing(const DuoScenario& s, double beta) {
    switch (s.strategy) {
        case Strategy::Radial:
        case Strategy::Tangent:
            return s.alpha1 < kPi / 2 ? wrap_angle(kPi + s.alpha1) : -s.alpha1;
        case Strategy::Hybrid:
            return wrap_angle(kPi + beta);
        case Strategy::Transition:
            return -s.alpha1;
    }
    return 0.0;
}

/// Drone 1 alone against the turret, flying straight at world angle
/// `heading` from radius r at bearing alpha1. Used to precompute the
/// transition strategy's death point.
SimResult simulate_drone1_only(double alpha1, double heading_angle, double r,
                               double dt) {
    DroneState d1;
    d1.pos = r * unit_at(alpha1);
    commit_heading(d1, heading_angle);
    DroneState d2;
    d2.pos = {2.0 * r, 0.0};  // inert placeholder, excluded from the run
    DuoParams params;
    return run_phased(d1, d2, dt, params, [](DroneState&, int) {},
                      8.0 * kPi + 2.0 * r, /*with_payload=*/false);
}

}  // namespace

double stay_alive_beta(double alpha1, double r_over_v) {
    if (alpha1 < 0.0 || alpha1 > kPi) {
        throw OutOfParameterRange("stay_alive_beta: alpha1 outside [0, pi]");
    }
    if (r_over_v <= 1.0) {
        throw OutOfParameterRange("stay_alive_beta: r must exceed v");
    }
    // Tangency of the reachable disc against the ray at angle beta:
    // r sin(beta - alpha1) = beta, i.e. alpha1 = beta - asin(beta / r).
    auto f = [&](double b) { return b - std::asin(b / r_over_v) - alpha1; };
    double lo = alpha1;
    double hi = std::min(alpha1 + kPi / 2, r_over_v);
    if (f(hi) < 0.0) {
        throw NumericalFailure(
            "stay_alive_beta: no tangency (drone outruns the sweep)");
    }
    for (int i = 0; i < 200 && hi - lo > 1e-12; ++i) {
        double mid = 0.5 * (lo + hi);
        (f(mid) < 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

Vec2 stay_alive_death_point(double alpha1, double r_over_v) {
    double beta = stay_alive_beta(alpha1, r_over_v);
    // Foot of the perpendicular from the start onto the ray at angle beta.
    double s = r_over_v * std::cos(beta - alpha1);
    return s * unit_at(beta);
}

DuoOutcome evaluate_duo(const DuoScenario& scenario, const DuoParams& params) {
    const double a1 = scenario.alpha1;
    const double r = scenario.r_over_v;
    if (a1 < 0.0 || a1 > kPi) {
        throw UnsupportedRegime("evaluate_duo: alpha1 outside [0, pi]");
    }
    if (r <= 1.0) {
        throw UnsupportedRegime("evaluate_duo: drones start inside the circle");
    }
    if (scenario.strategy == Strategy::Hybrid && a1 > 1.55) {
        throw UnsupportedRegime("evaluate_duo: hybrid regime ends near 1.45");
    }
    if (scenario.strategy == Strategy::Transition &&
        (a1 < 1.2 || a1 > kPi / 2 + 1e-9)) {
        throw UnsupportedRegime("evaluate_duo: transition regime is (~1.434, pi/2]");
    }

    const double dt = params.dt;
    double beta = 0.0;
    Vec2 d1_death_target;
    bool d1_has_line = false;

    if (scenario.strategy == Strategy::Hybrid) {
        // Below the tangency radius drone 1 outruns the sweep entirely and
        // the stay-alive construction is moot; the payload trivially wins.
        try {
            beta = stay_alive_beta(a1, r);
            d1_death_target = stay_alive_death_point(a1, r);
            d1_has_line = true;
        } catch (const NumericalFailure&) {
            return {2, std::nullopt, true};
        }
    }

    SimResult pre;
    if (scenario.strategy == Strategy::Transition) {
        double heading = params.transition_heading
                             ? *params.transition_heading
                             : transition_angle(a1, params);
        pre = simulate_drone1_only(a1, heading, r, dt);
        if (!pre.drone1_died) {
            // Drone 1 escapes outright; no death point to coordinate on.
            return {1, std::nullopt, true};
        }
        beta = pre.death_bearing;

        DroneState d1;
        d1.pos = r * unit_at(a1);
        commit_heading(d1, heading);
        DroneState d2;
        d2.pos = r * unit_at(drone2_start_bearing(scenario, beta));
        // Drone 2 runs straight for the point pi radians from drone 1's
        // death (the death antipode), pressing radially inward if it arrives
        // early, then turns onto its safety-circle tangent at the hand-off.
        commit_straight(d2, -1.0 * pre.death_pos);
        auto hook = [](DroneState& drone2, int spin) {
            if (drone2.pos.norm() > 1.0) {
                commit_straight(drone2, tangent_target(drone2.pos, spin));
            }
        };
        auto res = run_phased(d1, d2, dt, params, hook, 8.0 * kPi + 2.0 * r);
        std::optional<int> survivor;
        if (res.drone2_safe) survivor = 2;
        else if (res.drone1_safe) survivor = 1;
        return {survivor,
                res.drone1_died ? std::optional<double>(res.death_bearing)
                                : std::nullopt,
                res.drone2_safe};
    }

    DroneState d1;
    d1.pos = r * unit_at(a1);
    DroneState d2;
    d2.pos = r * unit_at(drone2_start_bearing(scenario, beta));

    switch (scenario.strategy) {
        case Strategy::Radial:
            break;  // both radial-in
        case Strategy::Tangent:
            commit_straight(d1, tangent_target(d1.pos, +1));
            commit_straight(d2, tangent_target(d2.pos, +1));
            break;
        case Strategy::Hybrid:
            if (d1_has_line) commit_straight(d1, d1_death_target);
            break;
        case Strategy::Transition:
            break;  // handled above
    }

    auto hook = [&](DroneState& drone2, int spin) {
        // Radially-held payloads pick their evasion line only once the
        // turret commits; the tangent strategy stays on its committed line.
        if (scenario.strategy == Strategy::Hybrid && drone2.pos.norm() > 1.0) {
            commit_straight(drone2, tangent_target(drone2.pos, spin));
        }
    };
    auto res = run_phased(d1, d2, dt, params, hook, 8.0 * kPi + 2.0 * r);

    std::optional<int> survivor;
    if (res.drone2_safe) survivor = 2;
    else if (res.drone1_safe) survivor = 1;
    return {survivor,
            res.drone1_died ? std::optional<double>(res.death_bearing)
                            : std::nullopt,
            res.drone2_safe};
}

double r_max(double alpha1, Strategy strategy, const DuoParams& params) {
    DuoParams local = params;
    if (strategy == Strategy::Transition && !local.transition_heading) {
        // Optimize the heading once; the bisection reuses it.
        local.transition_heading = transition_angle(alpha1, params);
    }
    auto feasible = [&](double r) {
        return evaluate_duo({alpha1, strategy, r}, local).r_feasible;
    };
    double lo = 1.02;
    if (!feasible(lo)) return lo;
    double hi = 8.0;
    while (hi < 24.0 && feasible(hi)) {
        lo = hi;
        hi *= 1.4;
    }
    while (hi - lo > 1e-4) {
        double mid = 0.5 * (lo + hi);
        (feasible(mid) ? lo : hi) = mid;
    }
    return lo;
}

double transition_angle(double alpha1, const DuoParams& params) {
    if (alpha1 < 1.2 || alpha1 > kPi / 2 + 1e-9) {
        throw UnsupportedRegime("transition_angle: alpha1 outside (~1.434, pi/2]");
    }
    DuoParams inner = params;
    auto value = [&](double heading) {
        inner.transition_heading = heading;
        return r_max(alpha1, Strategy::Transition, inner);
    };

    // Coarse scan, then golden-section refinement around the best sample.
    const double lo0 = -3.13;
    const double hi0 = -1.25;
    double best_h = lo0;
    double best_v = -1.0;
    const int scan = 13;
    for (int i = 0; i < scan; ++i) {
        double h = lo0 + (hi0 - lo0) * i / (scan - 1);
        double v = value(h);
        if (v > best_v) {
            best_v = v;
            best_h = h;
        }
    }
    double step = (hi0 - lo0) / (scan - 1);
    double a = best_h - step;
    double b = best_h + step;
    const double invphi = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = b - invphi * (b - a);
    double x2 = a + invphi * (b - a);
    double f1 = value(x1);
    double f2 = value(x2);
    while (b - a > 2e-3) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + invphi * (b - a);
            f2 = value(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - invphi * (b - a);
            f1 = value(x1);
        }
    }
    return 0.5 * (a + b);
}

}  // namespace turretlab::duo2d
