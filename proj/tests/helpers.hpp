#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

#include "mimosa/config.hpp"
#include "mimosa/room_model.hpp"

namespace test_helpers {

/// Tiny deterministic generator so tests behave identically everywhere.
struct Rng {
    std::uint64_t state;

    explicit Rng(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    double uniform() { return static_cast<double>(next() >> 11) * 0x1p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Uniform direction on the sphere.
    mimosa::SphericalAngle direction() {
        const double ct = uniform(-1.0, 1.0);
        return mimosa::SphericalAngle(std::acos(ct), uniform(0.0, 2.0 * std::numbers::pi));
    }
};

/// Reflection with hand-picked kinematics, for constructed scenes.
inline mimosa::Reflection synthetic_reflection(const mimosa::SphericalAngle& doa,
                                               const mimosa::SphericalAngle& dor, double delay_s,
                                               double amplitude) {
    mimosa::Reflection r;
    r.doa = doa;
    r.dor = dor;
    r.delay_s = delay_s;
    r.distance_m = delay_s * 343.0;
    r.amplitude = amplitude;
    return r;
}

inline std::vector<mimosa::Reflection> random_reflections(Rng& rng, std::size_t count) {
    std::vector<mimosa::Reflection> out;
    for (std::size_t l = 0; l < count; ++l)
        out.push_back(synthetic_reflection(rng.direction(), rng.direction(), rng.uniform(0.005, 0.03),
                                           rng.uniform(0.05, 0.3)));
    return out;
}

/// The bundled reference scene (also encoded in configs/paper.cfg).
inline mimosa::SceneConfig reference_scene() { return mimosa::SceneConfig{}; }

struct ExpectedReflection {
    double delay_s;
    double dor_beta_deg, dor_psi_deg;
    double doa_theta_deg, doa_phi_deg;
};

/// Expected geometry of the reference scene: direct sound plus the first
/// five reflections inside the 7..29 ms gate.
inline const std::vector<ExpectedReflection>& reference_table() {
    static const std::vector<ExpectedReflection> rows = {
        {0.0129, 106.4, 225.0, 73.6, 45.0},  {0.0186, 138.2, 225.0, 138.2, 45.0},
        {0.0225, 99.3, 246.8, 80.7, 293.2},  {0.0225, 99.3, 203.2, 80.7, 156.8},
        {0.0262, 122.0, 246.8, 122.0, 293.2}, {0.0262, 122.0, 203.2, 122.0, 156.8},
    };
    return rows;
}

}  // namespace test_helpers
