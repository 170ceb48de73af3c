#include "mimosa/array_model.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "mimosa/sh_math.hpp"

namespace mimosa {

namespace {

constexpr double kPi = std::numbers::pi;

/// Rigid-sphere scattering kernel j_n(x) - j_n'(x)/h_n'(x) * h_n(x).
Complex rigid_sphere_kernel(int n, double x) {
    const Complex h = sph_hankel1(n, x);
    const Complex hp = sph_hankel1_prime(n, x);
    return sph_bessel_j(n, x) - sph_bessel_j_prime(n, x) / hp * h;
}

Complex unit_power_i(int exponent) {
    // (-i)^exponent
    switch (((exponent % 4) + 4) % 4) {
        case 0: return {1.0, 0.0};
        case 1: return {0.0, -1.0};
        case 2: return {-1.0, 0.0};
        default: return {0.0, 1.0};
    }
}

}  // namespace

void LoudspeakerArrayConfig::validate() const {
    if (radius_m <= 0.0) throw std::invalid_argument("loudspeaker array: radius must be positive");
    if (order < 0) throw std::invalid_argument("loudspeaker array: order must be nonnegative");
    if (aperture_rad <= 0.0 || aperture_rad >= kPi / 2.0)
        throw std::invalid_argument("loudspeaker array: aperture must lie in (0, pi/2)");
    if (air_density <= 0.0) throw std::invalid_argument("loudspeaker array: air density must be positive");
    if (sound_speed <= 0.0) throw std::invalid_argument("loudspeaker array: sound speed must be positive");
}

void MicrophoneArrayConfig::validate() const {
    if (radius_m <= 0.0) throw std::invalid_argument("microphone array: radius must be positive");
    if (order < 0) throw std::invalid_argument("microphone array: order must be nonnegative");
    if (sound_speed <= 0.0) throw std::invalid_argument("microphone array: sound speed must be positive");
}

double cap_aperture_from_diameter(double membrane_diameter_m, double sphere_radius_m) {
    if (membrane_diameter_m <= 0.0 || membrane_diameter_m >= 2.0 * sphere_radius_m)
        throw std::invalid_argument("cap aperture: membrane diameter must lie in (0, 2r)");
    return std::asin(0.5 * membrane_diameter_m / sphere_radius_m);
}

double cap_coefficient(int n, double aperture_rad) {
    if (n < 0) throw std::invalid_argument("cap_coefficient: negative order");
    const double ca = std::cos(aperture_rad);
    if (n == 0) return 4.0 * kPi * kPi * (1.0 - ca);
    return 4.0 * kPi * kPi / (2.0 * n + 1.0) * (legendre_p(n - 1, ca) - legendre_p(n + 1, ca));
}

Complex loudspeaker_radial(int n, double k_r, const LoudspeakerArrayConfig& cfg) {
    if (k_r <= 0.0) throw std::invalid_argument("loudspeaker_radial: requires k*r > 0");
    const double prefactor = cfg.air_density * cfg.sound_speed * cfg.radius_m * cfg.radius_m;
    return prefactor * unit_power_i(n + 1) * rigid_sphere_kernel(n, k_r) * cap_coefficient(n, cfg.aperture_rad);
}

Complex mic_radial(int n, double k_r) {
    if (k_r <= 0.0) throw std::invalid_argument("mic_radial: requires k*r > 0");
    return 4.0 * kPi * unit_power_i(n) * rigid_sphere_kernel(n, k_r);
}

namespace {

template <typename Fn>
CVector repeat_per_order(int order, Fn&& value_of_order) {
    CVector d(sh_count(order));
    for (int n = 0; n <= order; ++n) {
        const Complex v = value_of_order(n);
        for (int m = -n; m <= n; ++m) d[sh_index(n, m)] = v;
    }
    return d;
}

}  // namespace

CVector loudspeaker_response_diagonal(double omega, const LoudspeakerArrayConfig& cfg) {
    if (omega <= 0.0) throw std::invalid_argument("loudspeaker response: omega must be positive");
    const double k_r = omega * cfg.radius_m / cfg.sound_speed;
    return repeat_per_order(cfg.order, [&](int n) { return loudspeaker_radial(n, k_r, cfg); });
}

CVector mic_response_diagonal(double omega, const MicrophoneArrayConfig& cfg) {
    if (omega <= 0.0) throw std::invalid_argument("microphone response: omega must be positive");
    const double k_r = omega * cfg.radius_m / cfg.sound_speed;
    return repeat_per_order(cfg.order, [&](int n) { return mic_radial(n, k_r); });
}

namespace {

Matrix diagonal_matrix(const CVector& d) {
    Matrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
}

}  // namespace

Matrix loudspeaker_response_matrix(double omega, const LoudspeakerArrayConfig& cfg) {
    return diagonal_matrix(loudspeaker_response_diagonal(omega, cfg));
}

Matrix mic_response_matrix(double omega, const MicrophoneArrayConfig& cfg) {
    return diagonal_matrix(mic_response_diagonal(omega, cfg));
}

}  // namespace mimosa
