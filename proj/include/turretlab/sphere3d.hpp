#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "turretlab/turret3d.hpp"
#include "turretlab/vec.hpp"

namespace turretlab::sphere3d {

enum class Generator { Fibonacci, LloydRelaxed, Explicit };

/// Unit target directions from the turret, with generation metadata.
struct SpherePointSet {
    std::vector<Vec3> points;
    Generator origin = Generator::Explicit;
    std::uint64_t seed = 0;
};

/// Golden-angle spiral: z uniformly spaced in (-1, 1), azimuth advancing by
/// 2*pi/phi^2 per point.
SpherePointSet fibonacci_sphere(int n);

/// Seeded random directions relaxed by Lloyd iterations on the spherical
/// Voronoi diagram (cells from convex-hull duality; centroids from
/// area-weighted triangle-fan averages).
SpherePointSet lloyd_relax(int n, std::uint64_t seed, int iterations);

enum class MetricKind { FreeRotation, PanTiltRate };

struct Metric {
    MetricKind kind = MetricKind::FreeRotation;
    double pan_rate = 1.0;
    double tilt_rate = 1.0;
};

/// Angular distance between unit directions. FreeRotation is the geodesic
/// angle; PanTiltRate is the time-optimal simultaneous-axis slew expressed
/// as an equivalent angle at the faster axis rate.
/// Throws NonUnitVector unless both inputs are unit length.
double angular_distance(const Vec3& u, const Vec3& v, const Metric& metric);

enum class Solver { NN, NNTwoOpt, ExactDP, PhantomTour };

struct PathResult {
    std::vector<int> order;
    std::vector<double> leg_lengths;
    double total = 0.0;
    Solver solver = Solver::NN;
};

/// Greedy nearest-neighbor chain from the start direction; ties break to the
/// lowest index.
PathResult nn_path(const SpherePointSet& points, const Vec3& start,
                   const Metric& metric);

/// NN seed improved by first-improvement 2-opt to a local optimum; the
/// near-optimal baseline for instances beyond the exact-DP limit.
PathResult nn_two_opt_path(const SpherePointSet& points, const Vec3& start,
                           const Metric& metric);

/// Exact shortest Hamiltonian path from the start direction (open path),
/// by bitmask dynamic programming. n <= 22.
PathResult exact_shp(const SpherePointSet& points, const Vec3& start,
                     const Metric& metric);

/// Symmetric (n+2)x(n+2) matrix over {start, p_0..p_{n-1}, phantom} whose
/// optimal closed tour, cut at the phantom node, is the optimal open path
/// from the start. The phantom sits at distance 0 from the start and
/// (n+2)*pi from every point.
std::vector<std::vector<double>> phantom_transform(const SpherePointSet& points,
                                                   const Vec3& start,
                                                   const Metric& metric);

/// Runs the phantom-tour pipeline end to end with the exact tour solver:
/// build the matrix, solve the closed tour, cut the phantom, orient from the
/// start. n <= 20.
PathResult shp_via_phantom_tour(const SpherePointSet& points, const Vec3& start,
                                const Metric& metric);

struct SqrtFit {
    double coefficient = 0.0;
    double rms_residual = 0.0;
};

/// Least-squares fit of totals ~ c * sqrt(n). Needs at least 3 samples.
SqrtFit sqrt_fit(std::span<const double> ns, std::span<const double> totals);

enum class SafetyRegion { SafeSphere, SafeCylinder, SafeCone, Unsafe };

/// Strongest safety region containing the drone position, if any. Sphere:
/// within speed / geodesic rate of the turret. Cylinder: within
/// speed / pan rate of the pan axis. Cone: outside enabled tilt limits.
SafetyRegion safety_region_membership(const Vec3& drone_pos, double drone_speed,
                                      const Turret3D& turret);

double safety_sphere_radius(double drone_speed, double geodesic_rate);
double safety_cylinder_radius(double drone_speed, double pan_rate);

/// Manipulator Jacobian of the spherical pan-tilt-extend arm
/// R_z(theta) R_y(phi) T_d; determinant -d^2 sin(phi).
Mat3 pan_tilt_jacobian(double theta, double phi, double d);

/// Forward kinematics matching pan_tilt_jacobian's joint convention.
Vec3 pan_tilt_forward(double theta, double phi, double d);

}  // namespace turretlab::sphere3d
