#pragma once

#include "mimosa/matrix.hpp"

namespace mimosa {

/// Spherical loudspeaker array with cap-shaped membranes on a rigid sphere.
struct LoudspeakerArrayConfig {
    double radius_m = 0.1;
    int order = 3;
    double aperture_rad = 0.0;     // cap half-angle
    double air_density = 1.2;      // kg/m^3
    double sound_speed = 343.0;    // m/s

    void validate() const;
};

/// Rigid-sphere microphone array.
struct MicrophoneArrayConfig {
    double radius_m = 0.07;
    int order = 2;
    double sound_speed = 343.0;

    void validate() const;
};

/// Cap aperture half-angle for a membrane of the given diameter mounted on a
/// sphere of the given radius, treating the diameter as a chord.
double cap_aperture_from_diameter(double membrane_diameter_m, double sphere_radius_m);

/// Membrane weighting coefficient of SH order n for a cap of half-angle
/// aperture_rad.
double cap_coefficient(int n, double aperture_rad);

/// Per-order frequency response of the cap loudspeaker on a rigid sphere,
/// evaluated at the dimensionless argument k*r_L.
Complex loudspeaker_radial(int n, double k_r, const LoudspeakerArrayConfig& cfg);

/// Per-order frequency response of the rigid-sphere microphone array at k*r_M.
Complex mic_radial(int n, double k_r);

/// Diagonal entries of the loudspeaker response matrix at angular frequency
/// omega: the order-n value repeated 2n+1 times in (n,m) flattening order.
CVector loudspeaker_response_diagonal(double omega, const LoudspeakerArrayConfig& cfg);
CVector mic_response_diagonal(double omega, const MicrophoneArrayConfig& cfg);

/// Full diagonal matrices (off-diagonal entries exactly zero).
Matrix loudspeaker_response_matrix(double omega, const LoudspeakerArrayConfig& cfg);
Matrix mic_response_matrix(double omega, const MicrophoneArrayConfig& cfg);

}  // namespace mimosa
