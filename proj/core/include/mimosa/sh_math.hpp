#pragma once

#include <array>
#include <vector>

#include "mimosa/matrix.hpp"

namespace mimosa {

/// Direction on the unit sphere. theta is elevation measured from +z in
/// [0, pi]; phi is azimuth from +x toward +y, normalized to [0, 2*pi).
struct SphericalAngle {
    double theta = 0.0;
    double phi = 0.0;

    SphericalAngle() = default;
    SphericalAngle(double theta_rad, double phi_rad);

    std::array<double, 3> to_unit_vector() const;
    static SphericalAngle from_vector(const std::array<double, 3>& v);

    double theta_deg() const;
    double phi_deg() const;
    static SphericalAngle from_degrees(double theta_deg, double phi_deg);
};

/// Flattened (n,m) index in the order (0,0),(1,-1),(1,0),(1,1),...
inline int sh_index(int n, int m) { return n * n + n + m; }
inline int sh_count(int order) { return (order + 1) * (order + 1); }

/// Spherical-harmonic basis evaluated at one direction, orders 0..order.
struct SteeringVector {
    int order = 0;
    CVector coeffs;
};

/// Point set on the sphere, optionally with quadrature weights summing to 4*pi.
struct SphereGrid {
    std::vector<SphericalAngle> points;
    std::vector<double> weights;  // empty when the grid is not a quadrature rule
    std::size_t n_theta = 0;      // grid rows (equiangular grids only)
    std::size_t n_phi = 0;        // grid columns (equiangular grids only)
};

/// Legendre polynomial P_n(x) by upward recurrence.
double legendre_p(int n, double x);

/// Complex orthonormal spherical harmonic Y_n^m (Condon-Shortley phase).
Complex sph_harmonic(int n, int m, const SphericalAngle& dir);

/// Spherical Bessel functions of the first and second kind and the outgoing
/// Hankel function h_n = j_n + i*y_n, with derivatives from the recurrence
/// f_n' = f_{n-1} - (n+1)/x * f_n.
double sph_bessel_j(int n, double x);
double sph_bessel_j_prime(int n, double x);
double sph_bessel_y(int n, double x);
Complex sph_hankel1(int n, double x);
Complex sph_hankel1_prime(int n, double x);

SteeringVector steering_vector(const SphericalAngle& dir, int order);

/// Rows of steering vectors, one per direction: L x (order+1)^2.
Matrix steering_matrix(const std::vector<SphericalAngle>& dirs, int order);

/// Equiangular grid with cell-centered elevation rows (no pole duplicates).
/// resolution 1 degree gives 180 x 360 points.
SphereGrid make_grid(double resolution_deg);

/// Gauss-Legendre x uniform-azimuth rule, exact for products of spherical
/// harmonics up to the given order on each factor.
SphereGrid make_quadrature_grid(int order);

}  // namespace mimosa
