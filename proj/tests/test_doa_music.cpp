#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "helpers.hpp"
#include "mimosa/doa_music.hpp"
#include "mimosa/errors.hpp"
#include "mimosa/smoothing.hpp"
#include "mimosa/transfer_synthesis.hpp"

using namespace mimosa;
using test_helpers::Rng;
using test_helpers::random_reflections;
using test_helpers::reference_scene;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

MicrophoneArrayConfig mic_cfg() {
    MicrophoneArrayConfig cfg;
    cfg.radius_m = 0.07;
    cfg.order = 2;
    return cfg;
}

LoudspeakerArrayConfig ls_cfg() {
    LoudspeakerArrayConfig cfg;
    cfg.radius_m = 0.1;
    cfg.order = 3;
    cfg.aperture_rad = cap_aperture_from_diameter(0.0508, 0.1);
    return cfg;
}

/// Random Hermitian PSD matrix with known eigenstructure: U diag(psi) U^H
/// with U built by Gram-Schmidt on random columns.
Matrix oracle_psd(Rng& rng, std::size_t dim, std::vector<double>& psi_out) {
    Matrix u(dim, dim);
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j) u(i, j) = Complex{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
    for (std::size_t j = 0; j < dim; ++j) {
        for (int pass = 0; pass < 2; ++pass)
            for (std::size_t i = 0; i < j; ++i) {
                const Complex proj = dot_adjoint(u.column(i), u.column(j));
                for (std::size_t r = 0; r < dim; ++r) u(r, j) -= proj * u(r, i);
            }
        const double nrm = norm(u.column(j));
        for (std::size_t r = 0; r < dim; ++r) u(r, j) /= nrm;
    }
    psi_out.resize(dim);
    for (std::size_t k = 0; k < dim; ++k) psi_out[k] = rng.uniform(0.0, 10.0);
    std::sort(psi_out.begin(), psi_out.end(), std::greater<>());
    Matrix s(dim, dim);
    for (std::size_t k = 0; k < dim; ++k) {
        const CVector col = u.column(k);
        Matrix term = outer_product(col, col);
        term *= Complex{psi_out[k], 0.0};
        s += term;
    }
    return s;
}

std::vector<Reflection> reference_gated() {
    std::vector<Reflection> out;
    for (const auto& r : enumerate_images(reference_scene(), 0.029))
        if (r.delay_s >= 0.007) out.push_back(r);
    return out;
}

}  // namespace

TEST_CASE("eigendecomposition of simple matrices") {
    const auto eye = hermitian_eig(Matrix::identity(9));
    for (double v : eye.values) CHECK(v == doctest::Approx(1.0).epsilon(1e-13));

    Rng rng(71);
    CVector a(7);
    for (auto& v : a) v = Complex{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
    const auto rank1 = hermitian_eig(outer_product(a, a));
    CHECK(rank1.values[0] == doctest::Approx(norm2(a)).epsilon(1e-12));
    for (std::size_t k = 1; k < 7; ++k) CHECK(std::abs(rank1.values[k]) < 1e-12 * rank1.values[0]);
}

TEST_CASE("eigendecomposition against a constructed oracle") {
    Rng rng(73);
    for (std::size_t dim : {4u, 9u, 16u}) {
        std::vector<double> psi;
        const Matrix s = oracle_psd(rng, dim, psi);
        const auto eig = hermitian_eig(s);

        for (std::size_t k = 0; k < dim; ++k) CHECK(eig.values[k] == doctest::Approx(psi[k]).epsilon(1e-9));
        for (std::size_t k = 1; k < dim; ++k) CHECK(eig.values[k] <= eig.values[k - 1]);

        // Reconstruction residual.
        Matrix recon(dim, dim);
        for (std::size_t k = 0; k < dim; ++k) {
            const CVector col = eig.vectors.column(k);
            Matrix term = outer_product(col, col);
            term *= Complex{eig.values[k], 0.0};
            recon += term;
        }
        CHECK((recon - s).frobenius_norm() < 1e-10 * s.frobenius_norm());

        // Unitarity.
        const Matrix gram = eig.vectors.adjoint() * eig.vectors;
        CHECK((gram - Matrix::identity(dim)).frobenius_norm() < 1e-10);
    }

    Matrix skew(3, 3);
    skew(0, 1) = Complex{1.0, 0.0};
    skew(1, 0) = Complex{2.0, 0.0};
    CHECK_THROWS_AS(hermitian_eig(skew), std::invalid_argument);
}

TEST_CASE("noise subspace extraction") {
    Rng rng(79);
    std::vector<double> psi;
    const Matrix s = oracle_psd(rng, 9, psi);
    const auto eig = hermitian_eig(s);

    const Matrix un = noise_subspace(eig, 6);
    CHECK(un.rows() == 9);
    CHECK(un.cols() == 3);
    CHECK((un.adjoint() * un - Matrix::identity(3)).frobenius_norm() < 1e-10);

    // Orthogonal to the signal eigenvectors.
    const Matrix cross = un.adjoint() * eig.vectors.columns(0, 6);
    CHECK(cross.max_abs() < 1e-10);

    const Matrix single = noise_subspace(eig, 8);
    CHECK(single.cols() == 1);

    CHECK_THROWS_AS(noise_subspace(eig, 9), std::invalid_argument);
    CHECK_THROWS_AS(noise_subspace(eig, 0), std::invalid_argument);
}

TEST_CASE("signal count from the largest eigenvalue gap") {
    EigenDecomposition eig;
    eig.values = {1.0, 0.5, 0.1, 1e-15, 1e-16, 1e-16};
    eig.vectors = Matrix::identity(6);
    CHECK(estimate_signal_count(eig) == 3);

    // Exact zeros below the gap.
    eig.values = {2.0, 1.0, 0.0, 0.0};
    CHECK(estimate_signal_count(eig) == 2);

    // Ties break toward the smaller count.
    eig.values = {8.0, 2.0, 0.5};
    CHECK(estimate_signal_count(eig) == 1);

    eig.values = {1.0};
    CHECK_THROWS_AS(estimate_signal_count(eig), std::invalid_argument);
}

TEST_CASE("music spectrum peaks at the true direction") {
    Rng rng(83);
    const auto refl = random_reflections(rng, 1);
    const Matrix a = assemble_plane_wave_transfer(kTwoPi * 1600.0, refl, mic_cfg(), ls_cfg());
    const auto eig = hermitian_eig(modal_smooth(a, 3));
    const Matrix un = noise_subspace(eig, 1);

    SphereGrid grid = make_grid(5.0);
    grid.points.push_back(refl.front().doa);  // evaluate at the exact direction too
    grid.n_theta = 0;
    grid.n_phi = 0;
    const MusicSpectrum spec = music_spectrum(un, grid, 2);

    std::vector<double> rest(spec.values.begin(), spec.values.end() - 1);
    std::nth_element(rest.begin(), rest.begin() + rest.size() / 2, rest.end());
    const double median = rest[rest.size() / 2];
    CHECK(spec.values.back() > 1e6 * median);

    for (double v : spec.values) {
        CHECK(v > 0.0);
        CHECK(std::isfinite(v));
    }
}

TEST_CASE("noise-subspace denominator vanishes at every true direction") {
    const auto refl = reference_gated();
    const Matrix a = assemble_plane_wave_transfer(kTwoPi * 1600.0, refl, mic_cfg(), ls_cfg());
    const Matrix un = noise_subspace(hermitian_eig(modal_smooth(a, 3)), 6);

    const SphereGrid grid = make_grid(5.0);
    std::vector<double> denom(grid.points.size());
    CVector steer(9);
    for (std::size_t g = 0; g < grid.points.size(); ++g) {
        const SteeringVector y = steering_vector(grid.points[g], 2);
        for (std::size_t i = 0; i < 9; ++i) steer[i] = std::conj(y.coeffs[i]);
        denom[g] = norm2(un.apply_adjoint(steer));
    }
    std::nth_element(denom.begin(), denom.begin() + denom.size() / 2, denom.end());
    const double median = denom[denom.size() / 2];

    for (const auto& r : refl) {
        const SteeringVector y = steering_vector(r.doa, 2);
        for (std::size_t i = 0; i < 9; ++i) steer[i] = std::conj(y.coeffs[i]);
        CHECK(norm2(un.apply_adjoint(steer)) < 1e-10 * median);
    }
}

TEST_CASE("peak finding") {
    const SphereGrid grid = make_grid(10.0);  // 18 x 36 cells

    // Spectrum as the upper envelope of bumps around chosen directions.
    const auto bump_spectrum = [&](const std::vector<std::pair<SphericalAngle, double>>& bumps) {
        MusicSpectrum spec;
        spec.grid = grid;
        spec.values.resize(grid.points.size());
        for (std::size_t g = 0; g < grid.points.size(); ++g) {
            double v = 0.0;
            for (const auto& [dir, amp] : bumps)
                v = std::max(v, amp / (1.0 + great_circle_deg(grid.points[g], dir)));
            spec.values[g] = v;
        }
        return spec;
    };

    // Single maximum.
    const SphericalAngle lone = SphericalAngle::from_degrees(47.0, 132.0);
    const DoaEstimate single = find_peaks(bump_spectrum({{lone, 1.0}}), 1);
    REQUIRE(single.directions.size() == 1);
    CHECK(great_circle_deg(single.directions[0], lone) < 8.0);

    // Three bumps, one centered on the azimuth seam.
    const SphericalAngle seam = SphericalAngle::from_degrees(125.0, 0.4);
    const SphericalAngle strong = SphericalAngle::from_degrees(45.0, 100.0);
    const std::vector<std::pair<SphericalAngle, double>> bumps = {
        {strong, 9.0}, {seam, 8.0}, {SphericalAngle::from_degrees(80.0, 210.0), 6.0}};
    const MusicSpectrum spec = bump_spectrum(bumps);

    const DoaEstimate est = find_peaks(spec, 3, 5.0);
    REQUIRE(est.directions.size() == 3);
    CHECK(est.peak_values[0] > est.peak_values[1]);
    CHECK(great_circle_deg(est.directions[0], strong) < 8.0);
    CHECK(great_circle_deg(est.directions[1], seam) < 8.0);

    // A shoulder inside the exclusion radius of a stronger peak is skipped.
    auto crowded = bumps;
    crowded.push_back({SphericalAngle::from_degrees(45.0, 114.0), 8.5});  // ~10 deg from `strong`
    const DoaEstimate spaced = find_peaks(bump_spectrum(crowded), 2, 15.0);
    REQUIRE(spaced.directions.size() == 2);
    CHECK(great_circle_deg(spaced.directions[1], seam) < 8.0);

    try {
        find_peaks(spec, 5, 5.0);
        FAIL("expected PeakDeficitError");
    } catch (const PeakDeficitError& e) {
        CHECK(e.requested() == 5);
        CHECK(e.found() >= 3);
        CHECK(e.found() < 5);
    }
}

TEST_CASE("music output is invariant to cross-spectrum scaling") {
    const auto refl = reference_gated();
    Matrix a = assemble_plane_wave_transfer(kTwoPi * 1600.0, refl, mic_cfg(), ls_cfg());
    // Perturb the transfer so the spectrum is finite everywhere; a razor-sharp
    // noiseless spectrum would leave peak ordering at the mercy of rounding.
    Rng rng(97);
    const double scale = a.max_abs();
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            a(i, j) += 1e-3 * scale * Complex{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};

    const SphereGrid grid = make_grid(2.0);
    const auto peaks_of = [&](const CrossSpectrum& s) {
        return find_peaks(music_spectrum(noise_subspace(hermitian_eig(s), 6), grid, 2), 6);
    };

    const CrossSpectrum s = modal_smooth(a, 3);
    for (double factor : {4.0, 3.7, 1e6}) {
        CrossSpectrum scaled = s;
        scaled.mat *= Complex{factor, 0.0};
        const DoaEstimate est1 = peaks_of(s);
        const DoaEstimate est2 = peaks_of(scaled);
        REQUIRE(est1.directions.size() == est2.directions.size());
        for (std::size_t i = 0; i < est1.directions.size(); ++i) {
            CHECK(est1.directions[i].theta == est2.directions[i].theta);
            CHECK(est1.directions[i].phi == est2.directions[i].phi);
        }
    }
}

TEST_CASE("great-circle separation") {
    CHECK(great_circle_deg(SphericalAngle::from_degrees(40, 70), SphericalAngle::from_degrees(40, 70)) ==
          doctest::Approx(0.0));
    CHECK(great_circle_deg(SphericalAngle::from_degrees(40, 70), SphericalAngle::from_degrees(140, 250)) ==
          doctest::Approx(180.0));
    CHECK(great_circle_deg(SphericalAngle::from_degrees(90, 0), SphericalAngle::from_degrees(90, 90)) ==
          doctest::Approx(90.0));
}
