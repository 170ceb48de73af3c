#pragma once

#include <array>
#include <vector>

#include "mimosa/matrix.hpp"
#include "mimosa/sh_math.hpp"

namespace mimosa {

using Vec3 = std::array<double, 3>;

/// Axis-aligned shoebox room with one frequency-independent amplitude
/// reflection coefficient applied per wall bounce.
struct ShoeboxRoom {
    Vec3 dims{10.0, 10.0, 8.0};
    double wall_reflection = 0.8;

    void validate() const;
    bool operator==(const ShoeboxRoom&) const = default;
};

/// One image source and everything derived from it.
struct Reflection {
    Vec3 image_pos{};
    std::array<int, 3> mirror_signs{1, 1, 1};  // -1 on axes with an odd bounce count
    int bounce_count = 0;
    double distance_m = 0.0;
    double delay_s = 0.0;
    double amplitude = 0.0;  // wall_reflection^bounce_count / distance
    SphericalAngle doa;      // at the microphone array, sign convention of doa_of
    SphericalAngle dor;      // at the loudspeaker array, sign convention of dor_of
};

struct SceneConfig {
    ShoeboxRoom room;
    Vec3 mic_pos{5.0, 5.0, 3.0};
    Vec3 loudspeaker_pos{2.0, 2.0, 1.75};
    double sound_speed = 343.0;

    void validate() const;
    bool operator==(const SceneConfig&) const = default;
};

/// All image sources with delay <= max_delay_s, sorted by delay ascending.
std::vector<Reflection> enumerate_images(const SceneConfig& scene, double max_delay_s);

/// Arrival direction at the microphone: angles of mirror_signs * (mic - image).
SphericalAngle doa_of(const Reflection& refl, const Vec3& mic_pos);

/// Radiation direction at the loudspeaker: angles of (image - mic).
SphericalAngle dor_of(const Reflection& refl, const Vec3& mic_pos);

/// Complex propagation factor amplitude * exp(i*omega*delay).
Complex propagation_factor(const Reflection& refl, double omega);

}  // namespace mimosa
