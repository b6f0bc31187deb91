#include "turretlab/sphere3d.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "turretlab/errors.hpp"
#include "turretlab/held_karp.hpp"

namespace turretlab::sphere3d {

namespace {

void require_unit(const Vec3& v) {
    if (std::abs(v.norm() - 1.0) > 1e-9) {
        throw NonUnitVector("angular_distance: input is not unit length");
    }
}

double pan_of(const Vec3& v) { return std::atan2(v.y, v.x); }
double tilt_of(const Vec3& v) { return std::asin(std::clamp(v.z, -1.0, 1.0)); }

/// Distance matrix over {start, points...} with node 0 = start.
std::vector<std::vector<double>> start_matrix(const SpherePointSet& set,
                                              const Vec3& start,
                                              const Metric& metric) {
    const int n = static_cast<int>(set.points.size());
    std::vector<std::vector<double>> dist(n + 1, std::vector<double>(n + 1, 0.0));
    for (int i = 0; i <= n; ++i) {
        const Vec3& a = i == 0 ? start : set.points[i - 1];
        for (int j = i + 1; j <= n; ++j) {
            const Vec3& b = j == 0 ? start : set.points[j - 1];
            double d = angular_distance(a, b, metric);
            dist[i][j] = d;
            dist[j][i] = d;
        }
    }
    return dist;
}

PathResult path_from_order(const std::vector<std::vector<double>>& dist,
                           std::vector<int> order, Solver solver) {
    PathResult result;
    result.solver = solver;
    result.leg_lengths.reserve(order.size());
    int at = 0;
    for (int idx : order) {
        double leg = dist[at][idx + 1];
        result.leg_lengths.push_back(leg);
        result.total += leg;
        at = idx + 1;
    }
    result.order = std::move(order);
    return result;
}

}  // namespace

SpherePointSet fibonacci_sphere(int n) {
    if (n < 1) throw OutOfParameterRange("fibonacci_sphere: n must be >= 1");
    SpherePointSet set;
    set.origin = Generator::Fibonacci;
    set.points.reserve(n);
    const double golden_angle = kTwoPi / (std::numbers::phi * std::numbers::phi);
    for (int i = 0; i < n; ++i) {
        double z = 1.0 - (2.0 * i + 1.0) / n;
        double az = i * golden_angle;
        double s = std::sqrt(std::max(0.0, 1.0 - z * z));
        set.points.push_back({s * std::cos(az), s * std::sin(az), z});
    }
    return set;
}

double angular_distance(const Vec3& u, const Vec3& v, const Metric& metric) {
    require_unit(u);
    require_unit(v);
    if (metric.kind == MetricKind::FreeRotation) {
        return std::acos(std::clamp(u.dot(v), -1.0, 1.0));
    }
    double dpan = std::abs(wrap_angle(pan_of(u) - pan_of(v)));
    double dtilt = std::abs(tilt_of(u) - tilt_of(v));
    double time = std::max(dpan / metric.pan_rate, dtilt / metric.tilt_rate);
    return time * std::max(metric.pan_rate, metric.tilt_rate);
}

PathResult nn_path(const SpherePointSet& points, const Vec3& start,
                   const Metric& metric) {
    const int n = static_cast<int>(points.points.size());
    PathResult result;
    result.solver = Solver::NN;
    std::vector<bool> used(n, false);
    Vec3 at = start;
    for (int step = 0; step < n; ++step) {
        int pick = -1;
        double best = 0.0;
        for (int j = 0; j < n; ++j) {
            if (used[j]) continue;
            double d = angular_distance(at, points.points[j], metric);
            if (pick < 0 || d < best) {
                pick = j;
                best = d;
            }
        }
        used[pick] = true;
        result.order.push_back(pick);
        result.leg_lengths.push_back(best);
        result.total += best;
        at = points.points[pick];
    }
    return result;
}

PathResult nn_two_opt_path(const SpherePointSet& points, const Vec3& start,
                           const Metric& metric) {
    const int n = static_cast<int>(points.points.size());
    auto dist = start_matrix(points, start, metric);
    std::vector<int> order = nn_path(points, start, metric).order;

    // First-improvement 2-opt on the open path with the start pinned:
    // reversing order[i..j] replaces legs (i-1 -> i) and (j -> j+1).
    auto node = [&](int pos) { return pos < 0 ? 0 : order[pos] + 1; };
    bool improved = n > 2;
    while (improved) {
        improved = false;
        for (int i = 0; i < n - 1; ++i) {
            for (int j = i + 1; j < n; ++j) {
                double removed = dist[node(i - 1)][node(i)];
                double added = dist[node(i - 1)][node(j)];
                if (j + 1 < n) {
                    removed += dist[node(j)][node(j + 1)];
                    added += dist[node(i)][node(j + 1)];
                }
                if (added < removed - 1e-12) {
                    std::reverse(order.begin() + i, order.begin() + j + 1);
                    improved = true;
                }
            }
        }
    }
    return path_from_order(dist, std::move(order), Solver::NNTwoOpt);
}

PathResult exact_shp(const SpherePointSet& points, const Vec3& start,
                     const Metric& metric) {
    const int n = static_cast<int>(points.points.size());
    if (n > 22) throw InstanceTooLarge("exact_shp: n > 22");
    auto dist = start_matrix(points, start, metric);
    HeldKarpResult hk = held_karp_open_path(dist);
    auto result = path_from_order(dist, std::move(hk.order), Solver::ExactDP);
    return result;
}

std::vector<std::vector<double>> phantom_transform(const SpherePointSet& points,
                                                   const Vec3& start,
                                                   const Metric& metric) {
    const int n = static_cast<int>(points.points.size());
    const int dim = n + 2;  // {start, points..., phantom}
    const double big = dim * kPi;
    std::vector<std::vector<double>> m(dim, std::vector<double>(dim, 0.0));
    auto inner = start_matrix(points, start, metric);
    for (int i = 0; i <= n; ++i) {
        for (int j = 0; j <= n; ++j) m[i][j] = inner[i][j];
    }
    const int phantom = n + 1;
    m[phantom][0] = m[0][phantom] = 0.0;
    for (int i = 1; i <= n; ++i) {
        m[phantom][i] = m[i][phantom] = big;
    }
    return m;
}

PathResult shp_via_phantom_tour(const SpherePointSet& points, const Vec3& start,
                                const Metric& metric) {
    const int n = static_cast<int>(points.points.size());
    if (n > 20) throw InstanceTooLarge("shp_via_phantom_tour: n > 20");
    auto matrix = phantom_transform(points, start, metric);
    HeldKarpResult tour = held_karp_tour(matrix);

    // The optimal tour keeps the phantom adjacent to the start via the
    // zero edge; cutting both phantom edges leaves the open path. Orient it
    // to begin at the start node.
    const int phantom = n + 1;
    const int len = static_cast<int>(tour.order.size());
    int ppos = 0;
    for (int i = 0; i < len; ++i) {
        if (tour.order[i] == phantom) ppos = i;
    }
    std::vector<int> cut;
    cut.reserve(len - 1);
    for (int k = 1; k < len; ++k) cut.push_back(tour.order[(ppos + k) % len]);
    if (cut.back() == 0) {
        std::reverse(cut.begin(), cut.end());
    }
    if (cut.front() != 0) {
        throw NumericalFailure("phantom tour does not pass start-phantom edge");
    }
    std::vector<int> order;
    order.reserve(n);
    for (std::size_t k = 1; k < cut.size(); ++k) order.push_back(cut[k] - 1);

    auto dist = start_matrix(points, start, metric);
    return path_from_order(dist, std::move(order), Solver::PhantomTour);
}

SqrtFit sqrt_fit(std::span<const double> ns, std::span<const double> totals) {
    if (ns.size() != totals.size() || ns.size() < 3) {
        throw OutOfParameterRange("sqrt_fit: needs >= 3 matched samples");
    }
    double num = 0.0;
    double den = 0.0;
    for (std::size_t i = 0; i < ns.size(); ++i) {
        double root = std::sqrt(ns[i]);
        num += root * totals[i];
        den += ns[i];
    }
    double c = num / den;
    double ss = 0.0;
    for (std::size_t i = 0; i < ns.size(); ++i) {
        double r = totals[i] - c * std::sqrt(ns[i]);
        ss += r * r;
    }
    return {c, std::sqrt(ss / static_cast<double>(ns.size()))};
}

double safety_sphere_radius(double drone_speed, double geodesic_rate) {
    return drone_speed / geodesic_rate;
}

double safety_cylinder_radius(double drone_speed, double pan_rate) {
    return drone_speed / pan_rate;
}

SafetyRegion safety_region_membership(const Vec3& drone_pos, double drone_speed,
                                      const Turret3D& turret) {
    double geodesic_rate = std::max(turret.pan_rate_max, turret.tilt_rate_max);
    if (drone_pos.norm() <= safety_sphere_radius(drone_speed, geodesic_rate)) {
        return SafetyRegion::SafeSphere;
    }
    if (drone_pos.norm_xy() <=
        safety_cylinder_radius(drone_speed, turret.pan_rate_max)) {
        return SafetyRegion::SafeCylinder;
    }
    if (turret.tilt_min || turret.tilt_max) {
        double tilt = std::atan2(drone_pos.z, drone_pos.norm_xy());
        if ((turret.tilt_min && tilt < *turret.tilt_min) ||
            (turret.tilt_max && tilt > *turret.tilt_max)) {
            return SafetyRegion::SafeCone;
        }
    }
    return SafetyRegion::Unsafe;
}

Vec3 pan_tilt_forward(double theta, double phi, double d) {
    return {d * std::cos(theta) * std::sin(phi),
            d * std::sin(theta) * std::sin(phi),
            d * std::cos(phi)};
}

Mat3 pan_tilt_jacobian(double theta, double phi, double d) {
    double st = std::sin(theta), ct = std::cos(theta);
    double sp = std::sin(phi), cp = std::cos(phi);
    Mat3 j;
    j.m[0] = {-d * st * sp, d * ct * cp, ct * sp};
    j.m[1] = {d * ct * sp, d * st * cp, st * sp};
    j.m[2] = {0.0, -d * sp, cp};
    return j;
}

}  // namespace turretlab::sphere3d
