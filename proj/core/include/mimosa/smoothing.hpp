#pragma once

#include <string>
#include <vector>

#include "mimosa/matrix.hpp"

namespace mimosa {

/// Hermitian positive-semidefinite cross-spectrum estimate with provenance.
struct CrossSpectrum {
    Matrix mat;

    struct Meta {
        std::string estimator;     // "modal", "frequency" or "combined"
        double freq_lo_hz = 0.0;
        double freq_hi_hz = 0.0;
        std::size_t average_count = 0;  // rank-one terms averaged
    } meta;
};

/// Plane-wave-density response of one loudspeaker SH channel: the column of
/// the transfer matrix selected by the (n, m) unit beamforming vector.
CVector modal_vector(const Matrix& plane_wave_transfer, int n, int m);

/// Average of the rank-one cross-spectra of one modal vector over frequency.
CrossSpectrum frequency_smooth(const std::vector<CVector>& vector_per_bin);

/// Average of the rank-one cross-spectra over all loudspeaker SH channels at
/// one frequency; equals transfer * transfer^H / channel_count.
CrossSpectrum modal_smooth(const Matrix& plane_wave_transfer, int ls_order);

/// The same estimate accumulated channel by channel. Kept as an independent
/// route for validating the closed form.
CrossSpectrum modal_smooth_channel_sum(const Matrix& plane_wave_transfer, int ls_order);

/// Keeps the loudspeaker SH channels up to new_order: the first
/// (new_order+1)^2 columns.
Matrix truncate_loudspeaker_order(const Matrix& plane_wave_transfer, int ls_order, int new_order);

/// Frequency average of per-bin modal smoothing.
CrossSpectrum combined_smooth(const std::vector<Matrix>& transfer_per_bin, int ls_order);

}  // namespace mimosa
