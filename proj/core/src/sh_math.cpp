#include "mimosa/sh_math.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace mimosa {

namespace {

constexpr double kPi = std::numbers::pi;

double wrap_azimuth(double phi) {
    phi = std::fmod(phi, 2.0 * kPi);
    if (phi < 0.0) phi += 2.0 * kPi;
    if (phi >= 2.0 * kPi) phi = 0.0;
    return phi;
}

/// Orthonormalized associated Legendre values N_n^m * P_n^m(x) for m >= 0,
/// Condon-Shortley phase included, filled for all n <= order.
/// Output indexed by sh_index(n, m); entries with m < 0 are left unused here.
std::vector<double> normalized_assoc_legendre(int order, double x) {
    std::vector<double> p(sh_count(order), 0.0);
    const double sq = std::sqrt(std::max(0.0, 1.0 - x * x));
    p[sh_index(0, 0)] = std::sqrt(1.0 / (4.0 * kPi));
    for (int m = 1; m <= order; ++m)
        p[sh_index(m, m)] = -std::sqrt((2.0 * m + 1.0) / (2.0 * m)) * sq * p[sh_index(m - 1, m - 1)];
    for (int m = 0; m < order; ++m)
        p[sh_index(m + 1, m)] = std::sqrt(2.0 * m + 3.0) * x * p[sh_index(m, m)];
    for (int m = 0; m <= order; ++m) {
        for (int n = m + 2; n <= order; ++n) {
            const double a = std::sqrt((4.0 * n * n - 1.0) / (static_cast<double>(n) * n - static_cast<double>(m) * m));
            const double b = std::sqrt(((n - 1.0) * (n - 1.0) - m * m) / (4.0 * (n - 1.0) * (n - 1.0) - 1.0));
            p[sh_index(n, m)] = a * (x * p[sh_index(n - 1, m)] - b * p[sh_index(n - 2, m)]);
        }
    }
    return p;
}

/// Power series for j_n, used where upward recurrence would be unstable.
double sph_bessel_j_series(int n, double x) {
    double dfact = 1.0;  // (2n+1)!!
    for (int k = 1; k <= n; ++k) dfact *= 2.0 * k + 1.0;
    const double x2 = 0.5 * x * x;
    double term = 1.0;
    double sum = 1.0;
    for (int s = 1; s <= 200; ++s) {
        term *= -x2 / (s * (2.0 * n + 2.0 * s + 1.0));
        sum += term;
        if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    }
    return std::pow(x, n) / dfact * sum;
}

}  // namespace

SphericalAngle::SphericalAngle(double theta_rad, double phi_rad) {
    if (theta_rad < 0.0 || theta_rad > kPi) throw std::invalid_argument("SphericalAngle: theta outside [0, pi]");
    theta = theta_rad;
    phi = wrap_azimuth(phi_rad);
}

std::array<double, 3> SphericalAngle::to_unit_vector() const {
    const double st = std::sin(theta);
    return {st * std::cos(phi), st * std::sin(phi), std::cos(theta)};
}

SphericalAngle SphericalAngle::from_vector(const std::array<double, 3>& v) {
    const double r = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
    if (r == 0.0) throw std::invalid_argument("SphericalAngle::from_vector: zero-length vector");
    double ct = v[2] / r;
    ct = std::clamp(ct, -1.0, 1.0);
    const double theta = std::acos(ct);
    const double phi = (v[0] == 0.0 && v[1] == 0.0) ? 0.0 : std::atan2(v[1], v[0]);
    return SphericalAngle(theta, phi);
}

double SphericalAngle::theta_deg() const { return theta * 180.0 / kPi; }
double SphericalAngle::phi_deg() const { return phi * 180.0 / kPi; }

SphericalAngle SphericalAngle::from_degrees(double theta_deg, double phi_deg) {
    return SphericalAngle(theta_deg * kPi / 180.0, phi_deg * kPi / 180.0);
}

double legendre_p(int n, double x) {
    if (n < 0) throw std::invalid_argument("legendre_p: negative order");
    if (std::abs(x) > 1.0) throw std::invalid_argument("legendre_p: |x| > 1");
    if (n == 0) return 1.0;
    double pm1 = 1.0;
    double p = x;
    for (int k = 1; k < n; ++k) {
        const double pp = ((2.0 * k + 1.0) * x * p - k * pm1) / (k + 1.0);
        pm1 = p;
        p = pp;
    }
    return p;
}

Complex sph_harmonic(int n, int m, const SphericalAngle& dir) {
    if (n < 0 || std::abs(m) > n) throw std::invalid_argument("sph_harmonic: require |m| <= n");
    const int ma = std::abs(m);
    const auto p = normalized_assoc_legendre(n, std::cos(dir.theta));
    const Complex y = p[sh_index(n, ma)] * std::polar(1.0, ma * dir.phi);
    if (m >= 0) return y;
    const double sign = (ma % 2 == 0) ? 1.0 : -1.0;
    return sign * std::conj(y);
}

double sph_bessel_y(int n, double x) {
    if (n < 0) throw std::invalid_argument("sph_bessel_y: negative order");
    if (x <= 0.0) throw std::invalid_argument("sph_bessel_y: requires x > 0");
    double ym1 = std::sin(x) / x;  // y_{-1}
    double y = -std::cos(x) / x;
    for (int k = 0; k < n; ++k) {
        const double yp = (2.0 * k + 1.0) / x * y - ym1;
        ym1 = y;
        y = yp;
    }
    return y;
}

double sph_bessel_j(int n, double x) {
    if (n < 0) throw std::invalid_argument("sph_bessel_j: negative order");
    if (x < 0.0) throw std::invalid_argument("sph_bessel_j: requires x >= 0");
    if (x == 0.0) return n == 0 ? 1.0 : 0.0;
    if (n == 0) return std::sin(x) / x;
    // Upward recurrence is stable only while the order stays below the
    // argument; fall back to the series otherwise.
    if (x <= static_cast<double>(n) + 1.0) return sph_bessel_j_series(n, x);
    double jm1 = std::sin(x) / x;
    double j = std::sin(x) / (x * x) - std::cos(x) / x;
    for (int k = 1; k < n; ++k) {
        const double jp = (2.0 * k + 1.0) / x * j - jm1;
        jm1 = j;
        j = jp;
    }
    return j;
}

double sph_bessel_j_prime(int n, double x) {
    if (n < 0) throw std::invalid_argument("sph_bessel_j_prime: negative order");
    if (x < 0.0) throw std::invalid_argument("sph_bessel_j_prime: requires x >= 0");
    if (x == 0.0) {
        // Series limits: j_1'(0) = 1/3, all other orders 0.
        return n == 1 ? 1.0 / 3.0 : 0.0;
    }
    if (n == 0) return -sph_bessel_j(1, x);
    return sph_bessel_j(n - 1, x) - (n + 1.0) / x * sph_bessel_j(n, x);
}

Complex sph_hankel1(int n, double x) {
    if (x <= 0.0) throw std::invalid_argument("sph_hankel1: singular at x <= 0");
    return {sph_bessel_j(n, x), sph_bessel_y(n, x)};
}

Complex sph_hankel1_prime(int n, double x) {
    if (x <= 0.0) throw std::invalid_argument("sph_hankel1_prime: singular at x <= 0");
    const double yprime = (n == 0) ? -sph_bessel_y(1, x)
                                   : sph_bessel_y(n - 1, x) - (n + 1.0) / x * sph_bessel_y(n, x);
    return {sph_bessel_j_prime(n, x), yprime};
}

SteeringVector steering_vector(const SphericalAngle& dir, int order) {
    if (order < 0) throw std::invalid_argument("steering_vector: negative order");
    SteeringVector sv;
    sv.order = order;
    sv.coeffs.resize(sh_count(order));
    const auto p = normalized_assoc_legendre(order, std::cos(dir.theta));
    for (int n = 0; n <= order; ++n) {
        sv.coeffs[sh_index(n, 0)] = p[sh_index(n, 0)];
        for (int m = 1; m <= n; ++m) {
            const Complex y = p[sh_index(n, m)] * std::polar(1.0, m * dir.phi);
            sv.coeffs[sh_index(n, m)] = y;
            const double sign = (m % 2 == 0) ? 1.0 : -1.0;
            sv.coeffs[sh_index(n, -m)] = sign * std::conj(y);
        }
    }
    return sv;
}

Matrix steering_matrix(const std::vector<SphericalAngle>& dirs, int order) {
    Matrix m(dirs.size(), sh_count(order));
    for (std::size_t l = 0; l < dirs.size(); ++l) {
        const auto sv = steering_vector(dirs[l], order);
        for (int j = 0; j < sh_count(order); ++j) m(l, j) = sv.coeffs[j];
    }
    return m;
}

SphereGrid make_grid(double resolution_deg) {
    if (resolution_deg <= 0.0) throw std::invalid_argument("make_grid: resolution must be positive");
    SphereGrid grid;
    const auto n_theta = static_cast<std::size_t>(std::lround(180.0 / resolution_deg));
    const auto n_phi = static_cast<std::size_t>(std::lround(360.0 / resolution_deg));
    if (n_theta == 0 || n_phi == 0) throw std::invalid_argument("make_grid: resolution too coarse");
    const double dt = kPi / static_cast<double>(n_theta);
    const double dp = 2.0 * kPi / static_cast<double>(n_phi);
    grid.n_theta = n_theta;
    grid.n_phi = n_phi;
    grid.points.reserve(n_theta * n_phi);
    for (std::size_t i = 0; i < n_theta; ++i) {
        const double theta = (static_cast<double>(i) + 0.5) * dt;
        for (std::size_t j = 0; j < n_phi; ++j)
            grid.points.emplace_back(theta, static_cast<double>(j) * dp);
    }
    return grid;
}

SphereGrid make_quadrature_grid(int order) {
    if (order < 0) throw std::invalid_argument("make_quadrature_grid: negative order");
    const int n_nodes = order + 1;

    // Gauss-Legendre nodes of degree n_nodes on [-1, 1] by Newton iteration.
    std::vector<double> nodes(n_nodes), node_weights(n_nodes);
    for (int i = 0; i < n_nodes; ++i) {
        double x = std::cos(kPi * (i + 0.75) / (n_nodes + 0.5));
        for (int it = 0; it < 100; ++it) {
            double pm1 = 1.0, p = x;
            for (int k = 1; k < n_nodes; ++k) {
                const double pp = ((2.0 * k + 1.0) * x * p - k * pm1) / (k + 1.0);
                pm1 = p;
                p = pp;
            }
            const double deriv = n_nodes * (x * p - pm1) / (x * x - 1.0);
            const double dx = p / deriv;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        nodes[i] = x;
        double pm1 = 1.0, p = x;
        for (int k = 1; k < n_nodes; ++k) {
            const double pp = ((2.0 * k + 1.0) * x * p - k * pm1) / (k + 1.0);
            pm1 = p;
            p = pp;
        }
        const double deriv = n_nodes * (x * p - pm1) / (x * x - 1.0);
        node_weights[i] = 2.0 / ((1.0 - x * x) * deriv * deriv);
    }

    const int n_phi = 2 * order + 1;
    const double wphi = 2.0 * kPi / n_phi;
    SphereGrid grid;
    grid.n_theta = static_cast<std::size_t>(n_nodes);
    grid.n_phi = static_cast<std::size_t>(n_phi);
    grid.points.reserve(static_cast<std::size_t>(n_nodes) * n_phi);
    grid.weights.reserve(static_cast<std::size_t>(n_nodes) * n_phi);
    for (int i = 0; i < n_nodes; ++i) {
        const double theta = std::acos(std::clamp(nodes[i], -1.0, 1.0));
        for (int j = 0; j < n_phi; ++j) {
            grid.points.emplace_back(theta, j * wphi);
            grid.weights.push_back(node_weights[i] * wphi);
        }
    }
    return grid;
}

}  // namespace mimosa
