#include "mimosa/room_model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mimosa {

void ShoeboxRoom::validate() const {
    for (double d : dims)
        if (d <= 0.0) throw std::invalid_argument("room: dimensions must be positive");
    if (wall_reflection < 0.0 || wall_reflection > 1.0)
        throw std::invalid_argument("room: wall reflection must lie in [0, 1]");
}

void SceneConfig::validate() const {
    room.validate();
    if (sound_speed <= 0.0) throw std::invalid_argument("scene: sound speed must be positive");
    for (int a = 0; a < 3; ++a) {
        if (mic_pos[a] <= 0.0 || mic_pos[a] >= room.dims[a])
            throw std::invalid_argument("scene: microphone position must be strictly inside the room");
        if (loudspeaker_pos[a] <= 0.0 || loudspeaker_pos[a] >= room.dims[a])
            throw std::invalid_argument("scene: loudspeaker position must be strictly inside the room");
    }
}

SphericalAngle doa_of(const Reflection& refl, const Vec3& mic_pos) {
    Vec3 v{};
    double len2 = 0.0;
    for (int a = 0; a < 3; ++a) {
        v[a] = refl.mirror_signs[a] * (mic_pos[a] - refl.image_pos[a]);
        len2 += v[a] * v[a];
    }
    if (len2 == 0.0) throw std::invalid_argument("doa_of: coincident image and microphone");
    return SphericalAngle::from_vector(v);
}

SphericalAngle dor_of(const Reflection& refl, const Vec3& mic_pos) {
    Vec3 v{};
    double len2 = 0.0;
    for (int a = 0; a < 3; ++a) {
        v[a] = refl.image_pos[a] - mic_pos[a];
        len2 += v[a] * v[a];
    }
    if (len2 == 0.0) throw std::invalid_argument("dor_of: coincident image and microphone");
    return SphericalAngle::from_vector(v);
}

Complex propagation_factor(const Reflection& refl, double omega) {
    return refl.amplitude * std::polar(1.0, omega * refl.delay_s);
}

std::vector<Reflection> enumerate_images(const SceneConfig& scene, double max_delay_s) {
    scene.validate();
    if (max_delay_s <= 0.0) throw std::invalid_argument("enumerate_images: max delay must be positive");

    const double max_dist = max_delay_s * scene.sound_speed;
    std::vector<Reflection> out;

    // Per-axis image coordinate 2*a*L + sign*source, with bounce count
    // |a| + |a - (1-sign)/2| wall hits on that axis.
    std::array<int, 3> range{};
    for (int a = 0; a < 3; ++a)
        range[a] = static_cast<int>(std::ceil(max_dist / (2.0 * scene.room.dims[a]))) + 1;

    struct AxisImage {
        double coord;
        int bounces;
        int sign;
    };
    std::array<std::vector<AxisImage>, 3> axis_images;
    for (int a = 0; a < 3; ++a) {
        for (int q = -range[a]; q <= range[a]; ++q) {
            for (int sign : {+1, -1}) {
                const double coord = 2.0 * q * scene.room.dims[a] + sign * scene.loudspeaker_pos[a];
                const int bounces = std::abs(q) + std::abs(q - (1 - sign) / 2);
                // Skip per-axis images that already exceed the distance gate.
                if (std::abs(coord - scene.mic_pos[a]) > max_dist) continue;
                axis_images[a].push_back({coord, bounces, sign});
            }
        }
    }

    for (const auto& xi : axis_images[0]) {
        for (const auto& yi : axis_images[1]) {
            const double dxy2 = (xi.coord - scene.mic_pos[0]) * (xi.coord - scene.mic_pos[0]) +
                                (yi.coord - scene.mic_pos[1]) * (yi.coord - scene.mic_pos[1]);
            if (dxy2 > max_dist * max_dist) continue;
            for (const auto& zi : axis_images[2]) {
                const double dz = zi.coord - scene.mic_pos[2];
                const double dist = std::sqrt(dxy2 + dz * dz);
                if (dist > max_dist || dist == 0.0) continue;

                Reflection r;
                r.image_pos = {xi.coord, yi.coord, zi.coord};
                r.mirror_signs = {xi.sign, yi.sign, zi.sign};
                r.bounce_count = xi.bounces + yi.bounces + zi.bounces;
                r.distance_m = dist;
                r.delay_s = dist / scene.sound_speed;
                r.amplitude = std::pow(scene.room.wall_reflection, r.bounce_count) / dist;
                r.doa = doa_of(r, scene.mic_pos);
                r.dor = dor_of(r, scene.mic_pos);
                out.push_back(r);
            }
        }
    }

    std::sort(out.begin(), out.end(), [](const Reflection& a, const Reflection& b) {
        if (a.delay_s != b.delay_s) return a.delay_s < b.delay_s;
        if (a.image_pos[0] != b.image_pos[0]) return a.image_pos[0] < b.image_pos[0];
        if (a.image_pos[1] != b.image_pos[1]) return a.image_pos[1] < b.image_pos[1];
        return a.image_pos[2] < b.image_pos[2];
    });
    return out;
}

}  // namespace mimosa
