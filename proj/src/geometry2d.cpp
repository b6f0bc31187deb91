#include "turretlab/geometry2d.hpp"

#include <cmath>

#include "turretlab/angles.hpp"
#include "turretlab/errors.hpp"

namespace turretlab::geometry2d {

namespace {

// Bisection for a continuous f with f(lo) <= 0 <= f(hi) (or the reverse).
template <typename F>
double bisect(F f, double lo, double hi, double tol, int max_iter = 200) {
    double flo = f(lo);
    double fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo > 0.0) == (fhi > 0.0)) {
        throw NumericalFailure("bisect: root not bracketed");
    }
    for (int i = 0; i < max_iter && hi - lo > tol; ++i) {
        double mid = 0.5 * (lo + hi);
        double fm = f(mid);
        if (fm == 0.0) return mid;
        if ((fm > 0.0) == (fhi > 0.0)) {
            hi = mid;
            fhi = fm;
        } else {
            lo = mid;
            flo = fm;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace

PolarRelative relative_geometry(const Turret2D& turret, const Drone2D& drone) {
    double r = drone.p.norm();
    if (r == 0.0) {
        throw DegenerateAtOrigin("relative_geometry: drone at the turret origin");
    }
    double theta = drone.p.bearing();
    double alpha = wrap_angle(theta - turret.phi);
    return {r, theta, alpha};
}

double radial_region_boundary(double alpha, double v) {
    return v * (1.0 + std::abs(alpha));
}

double tangent_meet_angle(double r, double alpha, double v) {
    double c = std::min(1.0, v / r);
    double mag = std::acos(c);
    // alpha == 0 breaks toward CCW by convention.
    return alpha >= 0.0 ? mag : -mag;
}

Vec2 tangent_point(const Vec2& p0, double alpha, double v) {
    double r = p0.norm();
    if (r < v) {
        throw AlreadySafe("tangent_point: drone already inside the safety circle");
    }
    double theta = p0.bearing();
    double beta = tangent_meet_angle(r, alpha, v);
    return v * unit_at(theta + beta);
}

InterceptResult intercept(const Vec2& p0, double alpha, double v,
                          EvasionStrategy strategy) {
    double r = p0.norm();
    if (v <= 0.0 || r <= v) {
        throw AlreadySafe("intercept: requires ||p0|| > v and v > 0");
    }
    double a = std::abs(alpha);

    if (strategy == EvasionStrategy::Radial) {
        // Survives iff the safety circle is reached no later than alignment;
        // the boundary itself counts as survival.
        if (r <= v * (a + 1.0)) {
            return {Fate::ReachesSafety, std::nullopt, std::nullopt};
        }
        double theta = p0.bearing();
        Vec2 death = (r - v * a) * unit_at(theta);
        return {Fate::Destroyed, a, death};
    }

    // Tangent strategy.
    Vec2 pt = tangent_point(p0, alpha, v);
    double flight = (p0 - pt).norm();
    double beta = tangent_meet_angle(r, alpha, v);
    double sweep = a + std::abs(beta);
    if (flight / v <= sweep) {
        return {Fate::ReachesSafety, std::nullopt, std::nullopt};
    }
    // Death time: t = sweep - atan((flight - t v) / v), root-found on the
    // bracket [0, 2*sweep] which always straddles the root.
    auto f = [&](double t) {
        return t - sweep + std::atan((flight - t * v) / v);
    };
    double td = bisect(f, 0.0, 2.0 * sweep, 1e-10);
    Vec2 dir = (p0 - pt) / flight;
    Vec2 death = p0 - td * v * dir;
    return {Fate::Destroyed, td, death};
}

double gamma_max() {
    // tan(g) - g is monotone increasing on (pi, 3*pi/2).
    static const double value = [] {
        auto f = [](double g) { return std::tan(g) - g; };
        return bisect(f, kPi + 1e-9, 1.5 * kPi - 1e-9, 1e-12);
    }();
    return value;
}

Vec2 survivable_boundary(double gamma, double phi, double v) {
    if (std::abs(gamma) > gamma_max() + 1e-12) {
        throw OutOfParameterRange("survivable_boundary: |gamma| exceeds gamma_max");
    }
    double c = std::cos(gamma + phi);
    double s = std::sin(gamma + phi);
    return {v * (c + gamma * s), v * (s - gamma * c)};
}

double gamma_for_alpha(double alpha) {
    if (alpha < 0.0 || alpha > kPi) {
        throw OutOfParameterRange("gamma_for_alpha: alpha must lie in [0, pi]");
    }
    if (alpha == 0.0) return 0.0;
    auto f = [&](double g) { return g - std::atan(g) - alpha; };
    return bisect(f, 0.0, gamma_max(), 1e-12);
}

}  // namespace turretlab::geometry2d
