#include "turretlab/sim3d.hpp"

#include <algorithm>
#include <cmath>

#include "turretlab/errors.hpp"
#include "turretlab/sphere3d.hpp"

namespace turretlab::sim3d {

namespace {

Vec3 safe_normalize(const Vec3& v) {
    double n = v.norm();
    return n > 1e-12 ? v / n : Vec3{};
}

/// Time for the turret to aim at the target direction, limited per axis.
double time_to_aim(const Turret3D& turret, const Vec3& target_pos) {
    double pan = std::atan2(target_pos.y, target_pos.x);
    double tilt = std::atan2(target_pos.z, target_pos.norm_xy());
    double dpan = std::abs(wrap_angle(pan - turret.pan));
    double dtilt = std::abs(tilt - turret.tilt);
    return std::max(dpan / turret.pan_rate_max, dtilt / turret.tilt_rate_max);
}

void slew_toward(Turret3D& turret, const Vec3& target_pos, double dt) {
    double pan = std::atan2(target_pos.y, target_pos.x);
    double tilt = std::atan2(target_pos.z, target_pos.norm_xy());
    double dpan = wrap_angle(pan - turret.pan);
    double step_pan = std::clamp(dpan, -turret.pan_rate_max * dt,
                                 turret.pan_rate_max * dt);
    double dtilt = tilt - turret.tilt;
    double step_tilt = std::clamp(dtilt, -turret.tilt_rate_max * dt,
                                  turret.tilt_rate_max * dt);
    turret.pan = wrap_angle(turret.pan + step_pan);
    turret.tilt += step_tilt;
}

}  // namespace

DroneBody step_drone(DroneBody body, const Vec3& desired_force_dir, double dt) {
    body.vel += body.max_accel * dt * desired_force_dir;
    double speed = body.vel.norm();
    if (speed > body.max_speed) {
        body.vel = body.vel * (body.max_speed / speed);
    }
    body.p += dt * body.vel;
    return body;
}

Vec3 gun_repulsion(const Vec3& gun_dir, const Vec3& drone_pos, double cone) {
    double r = drone_pos.norm();
    if (r <= 0.0) {
        throw OutOfParameterRange("gun_repulsion: drone at the origin");
    }
    Vec3 p_hat = drone_pos / r;
    double psi = std::acos(std::clamp(gun_dir.dot(p_hat), -1.0, 1.0));
    if (psi >= cone) return {};
    double magnitude = 1.0 - psi / cone;

    Vec3 dir = gun_dir.cross(p_hat).cross(p_hat);
    double n = dir.norm();
    if (n < 1e-12) {
        // On the firing line the tangential direction is degenerate; push
        // along a fixed perpendicular (world-up unless aligned with it).
        Vec3 up{0.0, 0.0, 1.0};
        dir = up.cross(p_hat);
        if (dir.norm() < 1e-9) dir = Vec3{1.0, 0.0, 0.0}.cross(p_hat);
        n = dir.norm();
    }
    return (magnitude / n) * dir;
}

Vec3 blended_direction(const Vec3& goal_force, const Vec3& repulse_force,
                       double xi) {
    if (xi < 0.0 || xi > 1.0) {
        throw OutOfParameterRange("blended_direction: xi outside [0, 1]");
    }
    Vec3 blend = (1.0 - xi) * goal_force + xi * repulse_force;
    double n = blend.norm();
    if (n > 1e-12) return blend / n;
    double g = goal_force.norm();
    if (g > 1e-12) return goal_force / g;
    throw NoPreferredDirection("blended_direction: both forces vanish");
}

Vec3 indirect_goal(const Vec3& gun_dir, const Vec3& drone_pos, double k1,
                   double k2) {
    return {-k1 * gun_dir.x, -k1 * gun_dir.y, drone_pos.z - k2};
}

std::vector<Vec3> formation(Formation kind, int n, double d) {
    if (n < 1 || d <= 0.0) {
        throw OutOfParameterRange("formation: need n >= 1 and d > 0");
    }
    int cols = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(n))));
    if (kind == Formation::Cylinder) {
        // Small counts fill a single ring before stacking rows.
        cols = std::max(cols, std::min(n, 8));
    }

    std::vector<Vec3> out;
    out.reserve(n);
    for (int i = 0; i < n; ++i) {
        int row = i / cols;
        int col = i % cols;
        double z = 2.0 + 2.0 * row;
        // Centered column slots, alternate rows offset by half a column.
        double f = (col + 0.5 + 0.5 * (row % 2)) /
                   static_cast<double>(cols);
        switch (kind) {
            case Formation::Plane:
                out.push_back({d, -d + 2.0 * d * f, z});
                break;
            case Formation::HalfCylinder: {
                double az = -kPi / 2 + kPi * f;
                out.push_back({d * std::cos(az), d * std::sin(az), z});
                break;
            }
            case Formation::Cylinder: {
                double az = kTwoPi * f;
                out.push_back({d * std::cos(az), d * std::sin(az), z});
                break;
            }
        }
    }
    return out;
}

EngagementResult run_engagement_at(const std::vector<Vec3>& starts,
                                   const AttackConfig& config,
                                   const SimParams& params, TraceSink* sink) {
    Turret3D turret;  // pan 0, tilt 0, default rates
    std::vector<DroneBody> drones;
    drones.reserve(starts.size());
    for (const Vec3& p : starts) {
        DroneBody b;
        b.p = p;
        b.max_speed = params.drone_max_speed;
        b.max_accel = params.drone_max_accel;
        drones.push_back(b);
    }

    const double cyl_radius = sphere3d::safety_cylinder_radius(
        params.drone_max_speed, turret.pan_rate_max);

    EngagementResult result;
    double t = 0.0;
    int alive = static_cast<int>(drones.size());

    while (t < params.max_time) {
        // Turret: nearest target by time-to-aim, then rate-limited slew.
        int target = -1;
        double best = 0.0;
        for (int i = 0; i < static_cast<int>(drones.size()); ++i) {
            if (!drones[i].alive) continue;
            double tta = time_to_aim(turret, drones[i].p);
            if (target < 0 || tta < best) {
                target = i;
                best = tta;
            }
        }
        if (target >= 0) slew_toward(turret, drones[target].p, params.dt);
        t += params.dt;

        // Kills: alignment is a state-space visit, both axes within the
        // cone tolerance (Chebyshev error). A pure 3D cone would let a
        // plunging gun cover every azimuth near the tilt poles, which is
        // exactly where the pan-rate deficit is supposed to protect.
        Vec3 gun = turret.gun_direction();
        for (int i = 0; i < static_cast<int>(drones.size()); ++i) {
            DroneBody& d = drones[i];
            if (!d.alive) continue;
            double dpan = std::abs(
                wrap_angle(std::atan2(d.p.y, d.p.x) - turret.pan));
            double dtilt =
                std::abs(std::atan2(d.p.z, d.p.norm_xy()) - turret.tilt);
            double err = std::max(dpan, dtilt);
            if (err <= turret.kill_cone_half_angle) {
                d.alive = false;
                --alive;
                result.kill_log.push_back({i, t, d.p, err});
            }
        }
        if (alive == 0) {
            result.outcome = Outcome::AllDronesDown;
            result.time = t;
            if (sink) sink->on_step(t, turret, drones);
            return result;
        }

        // Drone steering and integration.
        for (int i = 0; i < static_cast<int>(drones.size()); ++i) {
            DroneBody& d = drones[i];
            if (!d.alive) continue;

            Vec3 goal;
            if (config.strategy == AttackStrategy::Direct) {
                goal = {};  // the turret
            } else if (d.p.norm_xy() > cyl_radius) {
                goal = {0.0, 0.0, d.p.z};  // level flight toward the axis
            } else {
                // Spiral down behind the gun. The behind-the-gun ring k1*cos(tilt) can
                // poke outside the safety cylinder when the gun engages
                // low-elevation targets; cap it so the spiral keeps
                // exploiting the region it reached.
                goal = indirect_goal(gun, d.p, config.k1, config.k2);
                double ring = goal.norm_xy();
                double cap = 0.8 * cyl_radius;
                if (ring > cap) {
                    goal.x *= cap / ring;
                    goal.y *= cap / ring;
                }
            }
            Vec3 goal_force = safe_normalize(goal - d.p);
            Vec3 repulse = gun_repulsion(gun, d.p, params.repulsion_cone);
            Vec3 dir = goal_force.norm() + repulse.norm() > 0.0
                           ? blended_direction(goal_force, repulse, config.xi)
                           : Vec3{};

            // Anti-collision: inverse-square shove outside the xi blend.
            Vec3 crowd{};
            for (int j = 0; j < static_cast<int>(drones.size()); ++j) {
                if (j == i || !drones[j].alive) continue;
                Vec3 delta = d.p - drones[j].p;
                double dist = delta.norm();
                if (dist < params.interdrone_radius && dist > 1e-9) {
                    crowd += delta / (dist * dist * dist);
                }
            }
            dir = safe_normalize(dir + params.interdrone_weight * crowd);

            d = step_drone(d, dir, params.dt);
            if (d.p.z < params.ground_z) {  // turret sits on the ground plane
                d.p.z = params.ground_z;
                if (d.vel.z < 0.0) d.vel.z = 0.0;
            }
        }

        // Contact destroys the turret.
        for (const DroneBody& d : drones) {
            if (d.alive && d.p.norm() <= params.hit_radius) {
                result.outcome = Outcome::TurretDestroyed;
                result.time = t;
                if (sink) sink->on_step(t, turret, drones);
                return result;
            }
        }

        if (sink) sink->on_step(t, turret, drones);
    }

    result.outcome = Outcome::Stalemate;
    result.time = t;
    return result;
}

EngagementResult run_engagement(const AttackConfig& config,
                                const SimParams& params, TraceSink* sink) {
    return run_engagement_at(formation(config.formation, config.n,
                                       config.distance),
                             config, params, sink);
}

MaxDistanceResult max_start_distance(AttackConfig config,
                                     const SimParams& params, double d_min,
                                     double d_cap) {
    auto wins = [&](double d) {
        config.distance = d;
        return run_engagement(config, params).outcome ==
               Outcome::TurretDestroyed;
    };

    double d = std::clamp(config.distance, d_min, d_cap);
    double lo, hi;
    if (wins(d)) {
        lo = d;
        hi = d;
        while (hi < d_cap) {
            hi = std::min(d_cap, hi * 2.0);
            if (!wins(hi)) break;
            lo = hi;
            if (hi >= d_cap) return {d_cap, true, false};
        }
        if (lo >= d_cap) return {d_cap, true, false};
    } else {
        hi = d;
        lo = d;
        bool found = false;
        while (lo > d_min) {
            lo = std::max(d_min, lo / 2.0);
            if (wins(lo)) {
                found = true;
                break;
            }
            hi = lo;
        }
        if (!found) {
            throw AttackNeverSucceeds(
                "max_start_distance: attack fails even at the minimum range");
        }
    }

    while (hi - lo > 0.5) {
        double mid = 0.5 * (lo + hi);
        (wins(mid) ? lo : hi) = mid;
    }

    MaxDistanceResult result{lo, false, false};
    // The searched landscape can show non-monotone pockets; probe above
    // the bisection result and fall back to a grid scan when one appears.
    for (double probe : {lo + 0.5, lo + 1.0, lo + 2.0}) {
        if (probe > d_cap || probe >= hi + 2.0) break;
        if (wins(probe)) {
            result.monotonicity_violated = true;
            break;
        }
    }
    if (result.monotonicity_violated) {
        for (double g = lo + 0.5; g <= std::min(hi + 2.0, d_cap); g += 0.5) {
            if (wins(g)) result.distance = g;
        }
    }
    return result;
}

}  // namespace turretlab::sim3d
