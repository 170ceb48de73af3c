#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "helpers.hpp"
#include "mimosa/sh_math.hpp"

using namespace mimosa;
using test_helpers::Rng;

namespace {

constexpr double kPi = std::numbers::pi;

/// Independent Gauss-Legendre nodes/weights for the quadrature oracle,
/// written against the textbook Newton iteration rather than the library.
void oracle_gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
    x.assign(n, 0.0);
    w.assign(n, 0.0);
    for (int i = 0; i < n; ++i) {
        double xi = std::cos(kPi * (i + 0.75) / (n + 0.5));
        double deriv = 0.0;
        for (int it = 0; it < 200; ++it) {
            double p0 = 1.0, p1 = xi;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * xi * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            deriv = n * (xi * p1 - p0) / (xi * xi - 1.0);
            const double dx = p1 / deriv;
            xi -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        x[i] = xi;
        w[i] = 2.0 / ((1.0 - xi * xi) * deriv * deriv);
    }
}

/// Closed forms for low-order spherical Bessel functions, used as oracles.
double oracle_j2(double x) { return (3.0 / (x * x * x) - 1.0 / x) * std::sin(x) - 3.0 / (x * x) * std::cos(x); }

}  // namespace

TEST_CASE("legendre polynomials") {
    CHECK(legendre_p(0, 0.3) == doctest::Approx(1.0));
    CHECK(legendre_p(1, 0.5) == doctest::Approx(0.5));
    CHECK(legendre_p(3, 0.5) == doctest::Approx(-0.4375).epsilon(1e-14));

    Rng rng(11);
    for (int i = 0; i < 50; ++i) {
        const double x = rng.uniform(-1.0, 1.0);
        CHECK(legendre_p(2, x) == doctest::Approx(0.5 * (3.0 * x * x - 1.0)).epsilon(1e-13));
        CHECK(legendre_p(4, x) ==
              doctest::Approx((35.0 * x * x * x * x - 30.0 * x * x + 3.0) / 8.0).epsilon(1e-12));
    }

    CHECK_THROWS_AS(legendre_p(-1, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(legendre_p(2, 1.5), std::invalid_argument);
}

TEST_CASE("spherical angle round trip") {
    Rng rng(22);
    for (int i = 0; i < 200; ++i) {
        const SphericalAngle a = rng.direction();
        const SphericalAngle b = SphericalAngle::from_vector(a.to_unit_vector());
        const auto u = a.to_unit_vector();
        const auto v = b.to_unit_vector();
        for (int k = 0; k < 3; ++k) CHECK(std::abs(u[k] - v[k]) < 1e-12);
    }
    // Azimuth normalization.
    CHECK(SphericalAngle(1.0, -0.5).phi == doctest::Approx(2.0 * kPi - 0.5));
    CHECK(SphericalAngle(1.0, 2.0 * kPi).phi == doctest::Approx(0.0));
    CHECK_THROWS_AS(SphericalAngle(-0.1, 0.0), std::invalid_argument);
}

TEST_CASE("spherical harmonics: anchors and symmetry") {
    const SphericalAngle any(1.234, 2.345);
    CHECK(sph_harmonic(0, 0, any).real() == doctest::Approx(0.2820947917738781).epsilon(1e-12));
    CHECK(sph_harmonic(0, 0, any).imag() == doctest::Approx(0.0));
    CHECK(sph_harmonic(1, 0, SphericalAngle(0.0, 0.0)).real() ==
          doctest::Approx(0.4886025119029199).epsilon(1e-12));

    Rng rng(33);
    for (int i = 0; i < 100; ++i) {
        const SphericalAngle dir = rng.direction();
        for (int n = 0; n <= 4; ++n) {
            for (int m = 0; m <= n; ++m) {
                const Complex plus = sph_harmonic(n, m, dir);
                const Complex minus = sph_harmonic(n, -m, dir);
                const double sign = (m % 2 == 0) ? 1.0 : -1.0;
                CHECK(std::abs(minus - sign * std::conj(plus)) < 1e-12);
            }
        }
    }

    CHECK_THROWS_AS(sph_harmonic(1, 2, any), std::invalid_argument);
}

TEST_CASE("spherical harmonics: orthonormality against an independent quadrature oracle") {
    const int order = 6;  // covers products up to twice the largest array order
    std::vector<double> nodes, weights;
    oracle_gauss_legendre(order + 1, nodes, weights);
    const int n_phi = 2 * order + 1;

    double worst = 0.0;
    for (int n = 0; n <= order; ++n) {
        for (int m = -n; m <= n; ++m) {
            for (int n2 = 0; n2 <= order; ++n2) {
                for (int m2 = -n2; m2 <= n2; ++m2) {
                    Complex acc{};
                    for (std::size_t i = 0; i < nodes.size(); ++i) {
                        const double theta = std::acos(nodes[i]);
                        for (int j = 0; j < n_phi; ++j) {
                            const SphericalAngle dir(theta, 2.0 * kPi * j / n_phi);
                            acc += weights[i] * (2.0 * kPi / n_phi) * sph_harmonic(n, m, dir) *
                                   std::conj(sph_harmonic(n2, m2, dir));
                        }
                    }
                    const double expect = (n == n2 && m == m2) ? 1.0 : 0.0;
                    worst = std::max(worst, std::abs(acc - expect));
                }
            }
        }
    }
    CHECK(worst < 1e-10);
}

TEST_CASE("spherical bessel functions") {
    CHECK(std::abs(sph_bessel_j(0, kPi)) < 1e-12);
    CHECK(sph_bessel_j(0, 0.0) == doctest::Approx(1.0));
    CHECK(sph_bessel_j(2, 0.0) == doctest::Approx(0.0));
    CHECK(sph_bessel_j(2, 1.0) == doctest::Approx(0.062035052011374).epsilon(1e-12));
    CHECK(sph_bessel_j(2, 1.0) == doctest::Approx(oracle_j2(1.0)).epsilon(1e-13));

    // Closed-form oracle across both evaluation branches.
    for (double x : {0.2, 0.7, 1.9, 2.5, 4.0, 9.0, 27.0, 50.0})
        CHECK(sph_bessel_j(2, x) == doctest::Approx(oracle_j2(x)).epsilon(1e-11));

    CHECK_THROWS_AS(sph_bessel_j(1, -1.0), std::invalid_argument);
}

TEST_CASE("hankel functions: closed form and small-argument behavior") {
    for (double x : {0.3, 1.0, 2.0, 10.0}) {
        const Complex expect = Complex{0.0, -1.0} * std::polar(1.0, x) / x;
        CHECK(std::abs(sph_hankel1(0, x) - expect) < 1e-13 * std::abs(expect));
    }

    // h_1 at small argument is dominated by the -i/x^2 singularity of y_1.
    const double x = 1e-3;
    const Complex h1 = sph_hankel1(1, x);
    const double y1_closed = -std::cos(x) / (x * x) - std::sin(x) / x;
    CHECK(h1.imag() == doctest::Approx(y1_closed).epsilon(1e-12));
    CHECK(std::abs(h1.imag()) > 1e4 * std::abs(h1.real()));

    CHECK_THROWS_AS(sph_hankel1(0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(sph_hankel1_prime(0, 0.0), std::invalid_argument);
}

TEST_CASE("wronskian identity j_n h_n' - j_n' h_n = i/x^2") {
    for (int n = 0; n <= 4; ++n) {
        for (double x = 0.1; x <= 50.0; x *= 1.45) {
            const Complex w = sph_bessel_j(n, x) * sph_hankel1_prime(n, x) -
                              sph_bessel_j_prime(n, x) * sph_hankel1(n, x);
            const Complex expect{0.0, 1.0 / (x * x)};
            CHECK(std::abs(w - expect) < 1e-9 * std::abs(expect));
        }
    }
}

TEST_CASE("recurrence derivatives match central differences") {
    for (int n = 0; n <= 4; ++n) {
        for (double x : {0.4, 1.3, 3.7, 8.0, 21.0}) {
            const double h = 1e-5 * std::max(1.0, x);
            const double dj = (sph_bessel_j(n, x + h) - sph_bessel_j(n, x - h)) / (2.0 * h);
            CHECK(sph_bessel_j_prime(n, x) == doctest::Approx(dj).epsilon(1e-6));
            const double dy = (sph_bessel_y(n, x + h) - sph_bessel_y(n, x - h)) / (2.0 * h);
            const Complex hp = sph_hankel1_prime(n, x);
            CHECK(hp.imag() == doctest::Approx(dy).epsilon(1e-6));
        }
    }
}

TEST_CASE("steering vectors") {
    Rng rng(44);
    const SphericalAngle dir = rng.direction();

    const SteeringVector sv0 = steering_vector(dir, 0);
    REQUIRE(sv0.coeffs.size() == 1);
    CHECK(sv0.coeffs[0].real() == doctest::Approx(0.2820947917738781).epsilon(1e-12));

    const SteeringVector sv3 = steering_vector(dir, 3);
    CHECK(sv3.coeffs.size() == 16);

    // Norm from the addition theorem at zero separation.
    for (int trial = 0; trial < 20; ++trial) {
        const SphericalAngle d = rng.direction();
        const SteeringVector sv = steering_vector(d, 4);
        double expect = 0.0;
        for (int n = 0; n <= 4; ++n) expect += (2.0 * n + 1.0) / (4.0 * kPi);
        CHECK(norm2(sv.coeffs) == doctest::Approx(expect).epsilon(1e-12));

        // Entries agree with the scalar evaluation.
        for (int n = 0; n <= 4; ++n)
            for (int m = -n; m <= n; ++m)
                CHECK(std::abs(sv.coeffs[sh_index(n, m)] - sph_harmonic(n, m, d)) < 1e-13);
    }
}

TEST_CASE("equiangular grid") {
    const SphereGrid grid = make_grid(1.0);
    CHECK(grid.points.size() == 64800);
    CHECK(grid.n_theta == 180);
    CHECK(grid.n_phi == 360);
    // Cell-centered rows keep the poles out.
    CHECK(grid.points.front().theta_deg() == doctest::Approx(0.5));
    CHECK(grid.points.back().theta_deg() == doctest::Approx(179.5));
    CHECK(grid.weights.empty());
    CHECK_THROWS_AS(make_grid(0.0), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(-2.0), std::invalid_argument);
}

TEST_CASE("quadrature grid is exact for spherical-harmonic products") {
    const SphereGrid grid = make_quadrature_grid(4);
    double wsum = 0.0;
    for (double w : grid.weights) wsum += w;
    CHECK(wsum == doctest::Approx(4.0 * kPi).epsilon(1e-12));

    double worst = 0.0;
    for (int n = 0; n <= 4; ++n)
        for (int m = -n; m <= n; ++m)
            for (int n2 = 0; n2 <= 4; ++n2)
                for (int m2 = -n2; m2 <= n2; ++m2) {
                    Complex acc{};
                    for (std::size_t g = 0; g < grid.points.size(); ++g)
                        acc += grid.weights[g] * sph_harmonic(n, m, grid.points[g]) *
                               std::conj(sph_harmonic(n2, m2, grid.points[g]));
                    const double expect = (n == n2 && m == m2) ? 1.0 : 0.0;
                    worst = std::max(worst, std::abs(acc - expect));
                }
    CHECK(worst < 1e-10);
}
