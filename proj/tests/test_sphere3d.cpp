#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "oracles.hpp"
#include "turretlab/errors.hpp"
#include "turretlab/rng.hpp"
#include "turretlab/sphere3d.hpp"
#include "turretlab/tsplib.hpp"

using namespace turretlab;
using namespace turretlab::sphere3d;

namespace {

const Vec3 kStart{1.0, 0.0, 0.0};

SpherePointSet random_set(Rng& rng, int n) {
    SpherePointSet set;
    set.origin = Generator::Explicit;
    for (int i = 0; i < n; ++i) set.points.push_back(rng.uniform_direction());
    return set;
}

double min_pairwise_angle(const SpherePointSet& set) {
    double best = kPi;
    for (std::size_t i = 0; i < set.points.size(); ++i) {
        for (std::size_t j = i + 1; j < set.points.size(); ++j) {
            double d = std::acos(
                std::clamp(set.points[i].dot(set.points[j]), -1.0, 1.0));
            best = std::min(best, d);
        }
    }
    return best;
}

}  // namespace

TEST_CASE("fibonacci sphere basics") {
    auto one = fibonacci_sphere(1);
    REQUIRE(one.points.size() == 1);
    CHECK(one.points[0].norm() == doctest::Approx(1.0).epsilon(1e-12));

    auto two = fibonacci_sphere(2);
    CHECK(two.points[0].z * two.points[1].z < 0.0);

    auto big = fibonacci_sphere(200);
    for (const auto& p : big.points) {
        CHECK(std::abs(p.norm() - 1.0) < 1e-12);
    }
    // Near-uniform packing: min pairwise distance stays a large fraction of
    // the ideal cell size sqrt(4*pi/n).
    CHECK(min_pairwise_angle(big) > 0.8 * std::sqrt(4.0 * kPi / 200.0));
}

TEST_CASE("lloyd relaxation converges toward uniformity") {
    // iterations = 0 is the pure seeded random set, reproducibly.
    auto raw1 = lloyd_relax(24, 7, 0);
    auto raw2 = lloyd_relax(24, 7, 0);
    for (int i = 0; i < 24; ++i) {
        CHECK(raw1.points[i].x == raw2.points[i].x);
        CHECK(raw1.points[i].z == raw2.points[i].z);
    }

    // Four points relax to a regular tetrahedron.
    auto tetra = lloyd_relax(4, 3, 400);
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(std::abs(tetra.points[i].norm() - 1.0) < 1e-9);
        for (std::size_t j = i + 1; j < 4; ++j) {
            double angle = std::acos(
                std::clamp(tetra.points[i].dot(tetra.points[j]), -1.0, 1.0));
            CHECK(angle == doctest::Approx(std::acos(-1.0 / 3.0)).epsilon(0.05));
        }
    }

    // Relaxation reduces the spread of nearest-neighbor distances.
    auto nn_cv = [](const SpherePointSet& set) {
        int n = static_cast<int>(set.points.size());
        std::vector<double> nn(n, kPi);
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                if (i == j) continue;
                double d = std::acos(
                    std::clamp(set.points[i].dot(set.points[j]), -1.0, 1.0));
                nn[i] = std::min(nn[i], d);
            }
        }
        double mean = 0.0;
        for (double d : nn) mean += d;
        mean /= n;
        double var = 0.0;
        for (double d : nn) var += (d - mean) * (d - mean);
        return std::sqrt(var / n) / mean;
    };
    auto before = lloyd_relax(200, 11, 0);
    auto after = lloyd_relax(200, 11, 50);
    CHECK(nn_cv(after) < nn_cv(before));
    CHECK(min_pairwise_angle(after) > min_pairwise_angle(before));
}

TEST_CASE("angular distance metrics") {
    Metric free{MetricKind::FreeRotation};
    Vec3 x{1, 0, 0}, y{0, 1, 0}, z{0, 0, 1};
    CHECK(angular_distance(x, x, free) == doctest::Approx(0.0));
    CHECK(angular_distance(x, y, free) == doctest::Approx(kPi / 2));
    CHECK(angular_distance(x, {-1, 0, 0}, free) == doctest::Approx(kPi));

    CHECK_THROWS_AS(angular_distance({2, 0, 0}, y, free), NonUnitVector);

    Metric pt{MetricKind::PanTiltRate, 2.0, 1.0};
    // Pure pan quarter-turn: time pi/2 / 2 = pi/4, scaled by max rate 2.
    CHECK(angular_distance(x, y, pt) == doctest::Approx(kPi / 2));
    // Pure tilt to the pole: time pi/2 / 1, scaled by 2.
    CHECK(angular_distance(x, z, pt) == doctest::Approx(kPi));

    // Metric axioms on random triples.
    Rng rng(19);
    for (const Metric& m : {free, pt}) {
        for (int i = 0; i < 2000; ++i) {
            Vec3 a = rng.uniform_direction();
            Vec3 b = rng.uniform_direction();
            Vec3 c = rng.uniform_direction();
            double ab = angular_distance(a, b, m);
            double ba = angular_distance(b, a, m);
            CHECK(ab == doctest::Approx(ba).epsilon(1e-12));
            CHECK(ab >= 0.0);
            CHECK(angular_distance(a, a, m) == doctest::Approx(0.0));
            CHECK(ab <= angular_distance(a, c, m) + angular_distance(c, b, m) + 1e-12);
        }
    }
}

TEST_CASE("nn path basics and ordering vs exact") {
    Metric free{};
    auto single = fibonacci_sphere(1);
    auto path = nn_path(single, kStart, free);
    CHECK(path.total ==
          doctest::Approx(angular_distance(kStart, single.points[0], free)));

    Rng rng(31);
    for (int trial = 0; trial < 40; ++trial) {
        int n = 2 + static_cast<int>(rng.raw() % 8);
        auto set = random_set(rng, n);
        for (auto kind : {MetricKind::FreeRotation, MetricKind::PanTiltRate}) {
            Metric m{kind, 2.0, 1.0};
            auto nn = nn_path(set, kStart, m);
            auto exact = exact_shp(set, kStart, m);
            CHECK(exact.total <= nn.total + 1e-12);

            double leg_sum = 0.0;
            for (double leg : nn.leg_lengths) leg_sum += leg;
            CHECK(nn.total == doctest::Approx(leg_sum));
        }
    }
}

TEST_CASE("exact shp equals brute force") {
    Rng rng(43);
    for (int trial = 0; trial < 50; ++trial) {
        int n = 2 + static_cast<int>(rng.raw() % 6);
        auto set = random_set(rng, n);
        for (auto kind : {MetricKind::FreeRotation, MetricKind::PanTiltRate}) {
            Metric m{kind, 1.5, 1.0};
            auto exact = exact_shp(set, kStart, m);
            auto dist = [&](int i, int j) {
                const Vec3& a = i < 0 ? kStart : set.points[i];
                const Vec3& b = j < 0 ? kStart : set.points[j];
                return angular_distance(a, b, m);
            };
            double bf = oracles::brute_force_shp(n, dist);
            CHECK(exact.total == doctest::Approx(bf).epsilon(1e-12));
        }
    }
}

TEST_CASE("two-opt improves or matches NN and respects exact lower bound") {
    Rng rng(61);
    Metric free{};
    for (int trial = 0; trial < 20; ++trial) {
        int n = 4 + static_cast<int>(rng.raw() % 9);
        auto set = random_set(rng, n);
        auto nn = nn_path(set, kStart, free);
        auto improved = nn_two_opt_path(set, kStart, free);
        auto exact = exact_shp(set, kStart, free);
        CHECK(improved.total <= nn.total + 1e-12);
        CHECK(exact.total <= improved.total + 1e-12);
    }
}

TEST_CASE("phantom transform structure and pipeline equivalence") {
    Rng rng(5);
    auto set = random_set(rng, 6);
    Metric free{};
    auto m = phantom_transform(set, kStart, free);
    REQUIRE(m.size() == 8);
    const double big = 8 * kPi;
    CHECK(m[7][0] == 0.0);
    CHECK(m[0][7] == 0.0);
    for (int i = 1; i <= 6; ++i) {
        CHECK(m[7][i] == big);
        CHECK(m[i][7] == big);
    }
    for (std::size_t i = 0; i < m.size(); ++i) {
        for (std::size_t j = 0; j < m.size(); ++j) {
            CHECK(m[i][j] == m[j][i]);
        }
    }

    for (int trial = 0; trial < 60; ++trial) {
        int n = 2 + static_cast<int>(rng.raw() % 9);
        auto pts = random_set(rng, n);
        auto via_tour = shp_via_phantom_tour(pts, kStart, free);
        auto exact = exact_shp(pts, kStart, free);
        CHECK(via_tour.total == doctest::Approx(exact.total).epsilon(1e-12));
    }
}

TEST_CASE("sqrt fit behavior") {
    std::vector<double> ns{25, 50, 100, 200, 400};
    std::vector<double> totals;
    for (double n : ns) totals.push_back(2.0 * std::sqrt(n));
    auto fit = sqrt_fit(ns, totals);
    CHECK(fit.coefficient == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(fit.rms_residual < 1e-12);

    std::vector<double> flat{10.0, 10.0, 10.0, 10.0, 10.0};
    auto bad = sqrt_fit(ns, flat);
    double mean = 10.0;
    CHECK(bad.rms_residual / mean > 0.1);  // flagged as non-sqrt growth

    std::vector<double> short_ns{1, 2};
    std::vector<double> short_ts{1, 2};
    CHECK_THROWS_AS(sqrt_fit(short_ns, short_ts), OutOfParameterRange);
}

TEST_CASE("safety regions") {
    Turret3D turret;
    // 5 m/s against 115 deg/s: sphere radius just under 2.5 m.
    double r = safety_sphere_radius(5.0, deg_to_rad(115.0));
    CHECK(r == doctest::Approx(5.0 / (115.0 * kPi / 180.0)).epsilon(1e-15));
    CHECK(r == doctest::Approx(2.49).epsilon(0.01));

    CHECK(safety_region_membership({1.0, 0.0, 2.0}, 5.0, turret) ==
          SafetyRegion::SafeSphere);
    // On the pan axis, any height is inside the cylinder.
    CHECK(safety_region_membership({0.0, 0.0, 50.0}, 5.0, turret) ==
          SafetyRegion::SafeCylinder);
    CHECK(safety_region_membership({10.0, 0.0, 200.0}, 5.0, turret) ==
          SafetyRegion::Unsafe);

    // Tilt limits disabled: never a cone.
    CHECK(safety_region_membership({10.0, 0.0, 1000.0}, 5.0, turret) !=
          SafetyRegion::SafeCone);

    Turret3D limited = turret;
    limited.tilt_min = deg_to_rad(-25.0);
    limited.tilt_max = deg_to_rad(85.0);
    CHECK(safety_region_membership({10.0, 0.0, 1000.0}, 5.0, limited) ==
          SafetyRegion::SafeCone);
    CHECK(safety_region_membership({10.0, 0.0, -1000.0}, 5.0, limited) ==
          SafetyRegion::SafeCone);
    CHECK(safety_region_membership({10.0, 0.0, 1.0}, 5.0, limited) ==
          SafetyRegion::Unsafe);
}

TEST_CASE("pan-tilt jacobian matches finite differences and singular set") {
    CHECK(std::abs(pan_tilt_jacobian(0.7, 0.0, 1.0).det()) < 1e-12);
    CHECK(std::abs(pan_tilt_jacobian(-1.1, kPi, 1.0).det()) < 1e-12);
    CHECK(std::abs(pan_tilt_jacobian(0.3, 1.2, 0.0).det()) < 1e-12);
    CHECK(std::abs(pan_tilt_jacobian(0.0, kPi / 2, 1.0).det()) > 1e-6);

    Rng rng(77);
    for (int i = 0; i < 200; ++i) {
        double theta = rng.uniform_angle();
        double phi = rng.uniform(0.05, kPi - 0.05);
        double d = rng.uniform(0.2, 3.0);
        Mat3 j = pan_tilt_jacobian(theta, phi, d);
        CHECK(j.det() == doctest::Approx(-d * d * std::sin(phi)).epsilon(1e-9));

        const double h = 1e-6;
        Vec3 dth = (pan_tilt_forward(theta + h, phi, d) -
                    pan_tilt_forward(theta - h, phi, d)) / (2 * h);
        Vec3 dph = (pan_tilt_forward(theta, phi + h, d) -
                    pan_tilt_forward(theta, phi - h, d)) / (2 * h);
        Vec3 dd = (pan_tilt_forward(theta, phi, d + h) -
                   pan_tilt_forward(theta, phi, d - h)) / (2 * h);
        Vec3 cols[3] = {dth, dph, dd};
        for (int col = 0; col < 3; ++col) {
            CHECK(std::abs(j.m[0][col] - cols[col].x) < 1e-6);
            CHECK(std::abs(j.m[1][col] - cols[col].y) < 1e-6);
            CHECK(std::abs(j.m[2][col] - cols[col].z) < 1e-6);
        }
    }

    // Jacobian singularity moves with d = 0 regardless of angles, and 0.1 rad
    // away from the singular tilt the determinant is comfortably nonzero.
    Rng rng2(78);
    for (int i = 0; i < 50; ++i) {
        double theta = rng2.uniform_angle();
        CHECK(std::abs(pan_tilt_jacobian(theta, 0.1, 1.0).det()) > 1e-6);
        CHECK(std::abs(pan_tilt_jacobian(theta, kPi - 0.1, 1.0).det()) > 1e-6);
    }
}

TEST_CASE("tsplib writer emits the explicit full-matrix format") {
    auto set = fibonacci_sphere(3);
    Metric free{};
    auto matrix = phantom_transform(set, kStart, free);
    auto file = std::filesystem::temp_directory_path() / "turretlab_test.tsp";
    tsplib::write_explicit_full_matrix(file, "fib3",
                                       "phantom_index=4 start_index=0", matrix);

    std::ifstream in(file);
    std::stringstream ss;
    ss << in.rdbuf();
    std::string text = ss.str();
    CHECK(text.find("TYPE : TSP") != std::string::npos);
    CHECK(text.find("DIMENSION : 5") != std::string::npos);
    CHECK(text.find("EDGE_WEIGHT_TYPE : EXPLICIT") != std::string::npos);
    CHECK(text.find("EDGE_WEIGHT_FORMAT : FULL_MATRIX") != std::string::npos);
    CHECK(text.find("phantom_index=4") != std::string::npos);
    CHECK(text.find("EOF") != std::string::npos);

    // Weights are round(1e6 * radians): the phantom row carries 5e6*pi.
    auto big = std::to_string(std::llround(1e6 * 5 * kPi));
    CHECK(text.find(big) != std::string::npos);
    std::filesystem::remove(file);
}

TEST_CASE("point sets are unit norm and duplicate free") {
    for (const auto& set : {fibonacci_sphere(128), lloyd_relax(64, 9, 10)}) {
        std::set<std::pair<long long, long long>> seen;
        for (const auto& p : set.points) {
            CHECK(std::abs(p.norm() - 1.0) < 1e-9);
        }
        CHECK(min_pairwise_angle(set) > 1e-9);
    }
}

TEST_CASE("exact shp size guard") {
    auto set = fibonacci_sphere(23);
    CHECK_THROWS_AS(exact_shp(set, kStart, Metric{}), InstanceTooLarge);
}
