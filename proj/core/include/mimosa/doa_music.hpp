#pragma once

#include <vector>

#include "mimosa/matrix.hpp"
#include "mimosa/sh_math.hpp"
#include "mimosa/smoothing.hpp"

namespace mimosa {

/// Eigenpairs of a Hermitian matrix, eigenvalues descending, column k of
/// vectors paired with values[k].
struct EigenDecomposition {
    std::vector<double> values;
    Matrix vectors;
};

/// MUSIC pseudo-spectrum sampled on a sphere grid (linear scale).
struct MusicSpectrum {
    SphereGrid grid;
    std::vector<double> values;
};

struct DoaEstimate {
    std::vector<SphericalAngle> directions;
    std::vector<double> peak_values;
};

/// Cyclic complex Jacobi rotations. Negative eigenvalues within
/// 1e-10 * trace of zero are clipped to zero.
EigenDecomposition hermitian_eig(const CrossSpectrum& s);
EigenDecomposition hermitian_eig(const Matrix& s, double hermitian_tol = 1e-9);

/// Columns signal_count..dim-1 of the eigenvector matrix.
Matrix noise_subspace(const EigenDecomposition& eig, std::size_t signal_count);

/// Index of the largest gap between consecutive eigenvalues on a log scale,
/// ties broken toward the smaller count.
std::size_t estimate_signal_count(const EigenDecomposition& eig);

/// Count of eigenvalues with values[k]/values[0] above rel_threshold.
std::size_t count_dominant(const EigenDecomposition& eig, double rel_threshold = 1e-6);

/// P(dir) = 1 / ||U_n^H v(dir)||^2 with v the conjugated steering vector of
/// the microphone array order. Denominators below 1/value_cap saturate.
MusicSpectrum music_spectrum(const Matrix& noise_basis, const SphereGrid& grid, int mic_order,
                             double value_cap = 1e30);

/// Grid-local maxima (8-neighborhood, azimuth wrap-around), greedily selected
/// by value subject to a minimum mutual separation. Throws PeakDeficitError
/// when fewer than count peaks survive.
DoaEstimate find_peaks(const MusicSpectrum& spec, std::size_t count, double min_separation_deg = 5.0);

/// Great-circle angle between two directions, degrees in [0, 180].
double great_circle_deg(const SphericalAngle& a, const SphericalAngle& b);

}  // namespace mimosa
