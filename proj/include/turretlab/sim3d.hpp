#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "turretlab/angles.hpp"
#include "turretlab/turret3d.hpp"
#include "turretlab/vec.hpp"

namespace turretlab::sim3d {

struct DroneBody {
    Vec3 p;
    Vec3 vel;
    double max_speed = 5.0;
    double max_accel = 10.0;
    bool alive = true;
};

enum class Formation { Plane, HalfCylinder, Cylinder };
enum class AttackStrategy { Direct, Indirect };

struct AttackConfig {
    Formation formation = Formation::Cylinder;
    int n = 8;
    double distance = 20.0;  ///< m, nominal starting distance / radius
    AttackStrategy strategy = AttackStrategy::Direct;
    double xi = 0.0;  ///< gun-repulsion blend weight in [0, 1]
    double k1 = 4.0;  ///< m, indirect goal horizontal offset behind the gun
    double k2 = 5.0;  ///< m, indirect goal descent per update
};

struct SimParams {
    double dt = 1.0 / 240.0;
    double hit_radius = 0.5;          ///< m, drone contact destroys the turret
    double repulsion_cone = kPi / 8;  ///< rad, gun repulsion activation width
    double interdrone_radius = 2.0;   ///< m, anti-collision activation range
    double interdrone_weight = 1.0;
    double max_time = 240.0;          ///< s, stalemate cutoff
    double drone_max_speed = 5.0;
    double drone_max_accel = 10.0;
    double ground_z = 0.0;  ///< m, drones cannot descend below the turret base
    std::uint64_t seed = 0;  ///< reserved; engagements are fully deterministic
};

enum class Outcome { TurretDestroyed, AllDronesDown, Stalemate };

struct KillRecord {
    int drone = 0;
    double time = 0.0;
    Vec3 position;
    double angular_error = 0.0;  ///< gun-to-drone angle at the kill
};

struct EngagementResult {
    Outcome outcome = Outcome::Stalemate;
    double time = 0.0;
    std::vector<KillRecord> kill_log;
};

/// Optional per-step observer (tracing, replay dumps, invariant checks).
struct TraceSink {
    virtual ~TraceSink() = default;
    virtual void on_step(double t, const Turret3D& turret,
                         const std::vector<DroneBody>& drones) = 0;
};

/// Semi-implicit step under a unit desired-force direction: full-thrust
/// acceleration along it, speed saturated at max_speed (drag acts only at
/// the cap), then position integration.
DroneBody step_drone(DroneBody body, const Vec3& desired_force_dir, double dt);

/// Tangential push off the firing line: ((g x p) x p), with a linear ramp
/// from 1 at zero angle to 0 at the cone edge. Zero outside the cone.
/// A drone exactly on the line gets a fixed, deterministic perpendicular.
Vec3 gun_repulsion(const Vec3& gun_dir, const Vec3& drone_pos,
                   double cone = kPi / 8);

/// normalize((1 - xi) * goal + xi * repulse); falls back to the goal
/// direction when the blend cancels. Throws NoPreferredDirection when both
/// inputs vanish.
Vec3 blended_direction(const Vec3& goal_force, const Vec3& repulse_force,
                       double xi);

/// Evasion goal behind the gun and below the drone:
/// [-k1*g_x, -k1*g_y, p_z - k2].
Vec3 indirect_goal(const Vec3& gun_dir, const Vec3& drone_pos, double k1,
                   double k2);

/// Staggered starting positions. Plane: a vertical grid at x = d spanning
/// +-45 deg of pan; half-cylinder: azimuths within [-pi/2, pi/2] at radius d;
/// cylinder: full ring(s) at radius d. Rows are 2 m apart starting at 2 m.
std::vector<Vec3> formation(Formation kind, int n, double d);

EngagementResult run_engagement(const AttackConfig& config,
                                const SimParams& params,
                                TraceSink* sink = nullptr);

/// Engagement from explicit starting positions (the formation step skipped).
EngagementResult run_engagement_at(const std::vector<Vec3>& starts,
                                   const AttackConfig& config,
                                   const SimParams& params,
                                   TraceSink* sink = nullptr);

struct MaxDistanceResult {
    double distance = 0.0;
    bool unbounded = false;
    bool monotonicity_violated = false;
};

/// Largest starting distance at which the attack still destroys the turret,
/// to 0.5 m: bracket by doubling/halving from config.distance, then bisect.
/// Post-probes above the result detect non-monotone pockets and fall back to
/// a 0.5 m grid scan. Throws AttackNeverSucceeds if even d_min fails.
MaxDistanceResult max_start_distance(AttackConfig config,
                                     const SimParams& params,
                                     double d_min = 2.0, double d_cap = 150.0);

}  // namespace turretlab::sim3d
