#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "turretlab/angles.hpp"
#include "turretlab/vec.hpp"

namespace turretlab {

/// Deterministic random source. std::uniform_real_distribution is
/// implementation-defined, so draws are mapped from raw engine output to keep
/// experiment outputs byte-stable across standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform double in [0, 1).
    double uniform01() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    /// Uniform double in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    /// Uniform angle in (-pi, pi].
    double uniform_angle() { return kPi - uniform01() * kTwoPi; }

    /// Uniform direction on the unit sphere.
    Vec3 uniform_direction() {
        double z = 1.0 - 2.0 * uniform01();
        double az = kTwoPi * uniform01();
        double s = std::sqrt(std::max(0.0, 1.0 - z * z));
        return {s * std::cos(az), s * std::sin(az), z};
    }

    std::uint64_t raw() { return engine_(); }

private:
    std::mt19937_64 engine_;
};

}  // namespace turretlab
