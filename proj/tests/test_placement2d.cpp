#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "turretlab/errors.hpp"
#include "turretlab/placement2d.hpp"
#include "turretlab/rng.hpp"

using namespace turretlab;
using namespace turretlab::placement2d;

TEST_CASE("greedy spacing endpoints and small cases") {
    const double eps = 0.01;

    auto c1 = greedy_spacing(1, eps);
    REQUIRE(c1.angles.size() == 1);
    CHECK(c1.angles[0] == doctest::Approx(kPi - eps));

    auto c2 = greedy_spacing(2, eps);
    CHECK(c2.angles[0] == doctest::Approx(kPi / 2 - eps));
    CHECK(c2.angles[1] == doctest::Approx(-kPi / 2 - eps));

    auto c3 = greedy_spacing(3, eps);
    CHECK(c3.angles[0] == doctest::Approx(kPi / 4 - eps));
    CHECK(c3.angles[1] == doctest::Approx(3 * kPi / 4 - eps));
    CHECK(c3.angles[2] == doctest::Approx(-kPi / 4 - eps));

    // First and last drones reported by the construction.
    for (int n = 1; n <= 10; ++n) {
        auto c = greedy_spacing(n, 1e-4);
        CHECK(c.angles.front() ==
              doctest::Approx(std::pow(0.5, n - 1) * kPi - 1e-4));
        CHECK(c.angles.back() ==
              doctest::Approx(wrap_angle(-std::pow(0.5, n - 1) * kPi - 1e-4)));
    }

    CHECK_THROWS_AS(greedy_spacing(3, 0.0), InvalidEpsilon);
    CHECK_THROWS_AS(greedy_spacing(3, kPi), InvalidEpsilon);
}

TEST_CASE("doubling spacing angles") {
    auto c2 = doubling_spacing(2);
    CHECK(doubling_alpha_opt(2) == doctest::Approx(kPi / 2));
    CHECK(c2.angles[0] == doctest::Approx(kPi / 2));
    CHECK(c2.angles[1] == doctest::Approx(-kPi / 2));

    auto c3 = doubling_spacing(3);
    CHECK(doubling_alpha_opt(3) == doctest::Approx(kPi / 3));
    CHECK(c3.angles[0] == doctest::Approx(kPi / 3));
    CHECK(c3.angles[1] == doctest::Approx(-kPi / 3));
    CHECK(c3.angles[2] == doctest::Approx(kPi));

    auto c1 = doubling_spacing(1);
    REQUIRE(c1.angles.size() == 1);
    CHECK(c1.angles[0] == doctest::Approx(kPi));
}

TEST_CASE("greedy sweep closed forms") {
    // The construction needs eps < (1/2)^(n-1)*pi, so carry eps per n.
    for (int n = 1; n <= 15; ++n) {
        double eps = std::min(1e-3, std::pow(0.5, n) * kPi);
        auto total = greedy_sweep(greedy_spacing(n, eps)).total_length;
        double expected = kTwoPi * (1.0 - std::pow(0.5, n)) - eps;
        CHECK(std::abs(total - expected) < 1e-12);
    }

    // Single drone: total equals |alpha|.
    AngularConfiguration single{{-1.3}, 0.0};
    CHECK(greedy_sweep(single).total_length == doctest::Approx(1.3));

    // Doubling spacing drags the greedy turret almost all the way around.
    auto d4 = greedy_sweep(doubling_spacing(4)).total_length;
    CHECK(std::abs(d4 - (kTwoPi - doubling_alpha_opt(4))) < 1e-12);
}

TEST_CASE("optimal sweep equals brute force on random instances") {
    Rng rng(11);
    for (int trial = 0; trial < 60; ++trial) {
        int n = 1 + static_cast<int>(rng.raw() % 6);
        AngularConfiguration config;
        for (int i = 0; i < n; ++i) config.angles.push_back(rng.uniform_angle());
        double dp = optimal_sweep(config).total_length;
        double bf = oracles::brute_force_sweep(0.0, config.angles);
        CHECK(dp == doctest::Approx(bf).epsilon(1e-12));
    }
}

TEST_CASE("optimal sweep equals the turn-at-most-once structural oracle") {
    Rng rng(23);
    for (int trial = 0; trial < 100; ++trial) {
        int n = 1 + static_cast<int>(rng.raw() % 10);
        AngularConfiguration config;
        for (int i = 0; i < n; ++i) config.angles.push_back(rng.uniform_angle());
        double dp = optimal_sweep(config).total_length;
        double structural = oracles::turn_once_sweep(0.0, config.angles);
        CHECK(dp == doctest::Approx(structural).epsilon(1e-12));
    }
}

TEST_CASE("optimal sweep on the structured placements") {
    const double eps = 1e-3;

    // n = 2 matches the closed form pi*(1 + 1/2) - eps.
    auto o2 = optimal_sweep(greedy_spacing(2, eps)).total_length;
    CHECK(std::abs(o2 - (1.5 * kPi - eps)) < 1e-12);

    // A single drone costs exactly its offset.
    auto o1 = optimal_sweep(greedy_spacing(1, eps)).total_length;
    CHECK(std::abs(o1 - (kPi - eps)) < 1e-12);

    // For n >= 3 the optimal turret turns CW first and pays the +eps side;
    // values confirmed against brute-force permutations.
    for (int n = 3; n <= 10; ++n) {
        auto o = optimal_sweep(greedy_spacing(n, eps)).total_length;
        double expected = kPi * (1.0 + std::pow(2.0, 1 - n)) + eps;
        CHECK(std::abs(o - expected) < 1e-12);
    }

    // Doubling spacing: both policies pay 2*pi - alpha_opt.
    for (int n : {1, 2, 3, 4, 5, 6, 7}) {
        auto cfg = doubling_spacing(n);
        double expect = kTwoPi - doubling_alpha_opt(n);
        CHECK(std::abs(greedy_sweep(cfg).total_length - expect) < 1e-12);
        CHECK(std::abs(optimal_sweep(cfg).total_length - expect) < 1e-12);
    }
}

TEST_CASE("sweep invariants on random configurations") {
    Rng rng(5);
    for (int trial = 0; trial < 400; ++trial) {
        int n = 1 + static_cast<int>(rng.raw() % 8);
        AngularConfiguration config;
        for (int i = 0; i < n; ++i) config.angles.push_back(rng.uniform_angle());

        auto g = greedy_sweep(config);
        auto o = optimal_sweep(config);

        // Totals are consistent with the per-leg breakdown.
        double sum = 0.0;
        for (double leg : g.per_leg) sum += leg;
        CHECK(g.total_length == doctest::Approx(sum));

        CHECK(o.total_length <= g.total_length + 1e-12);
        CHECK(o.total_length < kTwoPi);
        CHECK(g.total_length < kTwoPi);
    }
}

TEST_CASE("random trials are deterministic and ordered") {
    auto a = random_trial(8, 1234);
    auto b = random_trial(8, 1234);
    CHECK(a.greedy_len == b.greedy_len);
    CHECK(a.optimal_len == b.optimal_len);
    CHECK(a.optimal_len <= a.greedy_len);

    auto single = random_trial(1, 99);
    CHECK(single.greedy_len == doctest::Approx(single.optimal_len));

    double g_acc = 0.0;
    double o_acc = 0.0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        auto t = random_trial(8, seed);
        g_acc += t.greedy_len;
        o_acc += t.optimal_len;
    }
    CHECK(g_acc / 100.0 < kTwoPi);
    CHECK(o_acc / 100.0 < kTwoPi);
}

TEST_CASE("instance size guard") {
    AngularConfiguration big;
    for (int i = 0; i < 23; ++i) big.angles.push_back(0.1 * i - kPi / 2);
    CHECK_THROWS_AS(optimal_sweep(big), InstanceTooLarge);
}
