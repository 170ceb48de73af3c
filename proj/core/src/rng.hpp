#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace mimosa::detail {

/// splitmix64; fixed arithmetic so seeded streams are identical everywhere.
struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform in (0, 1].
    double uniform01() {
        const std::uint64_t bits = next() >> 11;  // 53 bits
        return (static_cast<double>(bits) + 1.0) * 0x1p-53;
    }

    /// Standard normal pair via Box-Muller.
    void normal_pair(double& z0, double& z1) {
        const double u1 = uniform01();
        const double u2 = uniform01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        z0 = r * std::cos(2.0 * std::numbers::pi * u2);
        z1 = r * std::sin(2.0 * std::numbers::pi * u2);
    }
};

/// Independent stream per (seed, index) pair.
inline SplitMix64 stream_for(std::uint64_t seed, std::uint64_t index) {
    SplitMix64 mix(seed ^ (0x9e3779b97f4a7c15ULL * (index + 1)));
    return SplitMix64(mix.next());
}

}  // namespace mimosa::detail
