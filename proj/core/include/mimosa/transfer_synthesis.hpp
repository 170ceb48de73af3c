#pragma once

#include <cstdint>
#include <vector>

#include "mimosa/array_model.hpp"
#include "mimosa/matrix.hpp"
#include "mimosa/room_model.hpp"

namespace mimosa {

/// Transfer matrices over a uniform DFT frequency grid. Only bins
/// 0..n_fft/2 are stored; the negative half is the conjugate mirror so that
/// time responses are real.
struct SpectrumMatrix {
    double fs = 0.0;
    std::size_t n_fft = 0;
    std::vector<double> freqs;  // bin center frequencies, Hz
    std::vector<Matrix> mats;   // one per stored bin

    std::size_t bins() const { return mats.size(); }
    std::size_t rows() const { return mats.empty() ? 0 : mats.front().rows(); }
    std::size_t cols() const { return mats.empty() ? 0 : mats.front().cols(); }

    /// Index of the stored bin closest to the given frequency.
    std::size_t nearest_bin(double freq_hz) const;
};

/// Welch-shaped time gate.
struct WindowSpec {
    double start_s = 0.0;
    std::size_t length_samples = 1;

    void validate() const;
    bool operator==(const WindowSpec&) const = default;
};

/// Additive identification-error model: circularly-symmetric complex Gaussian
/// entries scaled per frequency to the requested normalized misalignment.
struct NoiseSpec {
    double misalignment_db = -30.0;
    std::uint64_t seed = 1;

    bool operator==(const NoiseSpec&) const = default;
};

/// Loudspeaker-side weighting vector in the SH domain.
struct BeamformingVector {
    int order = 0;
    CVector coeffs;

    /// Unit selector for the SH channel of order n, degree m.
    static BeamformingVector channel_selector(int order, int n, int m);
};

/// Welch window sample w[k] on a support of length samples (endpoints zero).
double welch_window_value(std::size_t k, std::size_t length);

/// Pressure-domain transfer matrix at a single frequency: the sum over
/// reflections of mic_response * steer(doa)^H steer(dor) * ls_response *
/// propagation factor. Shape (N_M+1)^2 x (N_L+1)^2.
Matrix assemble_pressure_transfer(double omega, const std::vector<Reflection>& reflections,
                                  const MicrophoneArrayConfig& mic_cfg,
                                  const LoudspeakerArrayConfig& ls_cfg);

/// Same matrix built from stacked steering matrices and diagonal factors.
Matrix assemble_pressure_transfer_factored(double omega, const std::vector<Reflection>& reflections,
                                           const MicrophoneArrayConfig& mic_cfg,
                                           const LoudspeakerArrayConfig& ls_cfg);

/// Pressure-domain transfer without the microphone radial response, i.e. the
/// plane-wave-density transfer matrix.
Matrix assemble_plane_wave_transfer(double omega, const std::vector<Reflection>& reflections,
                                    const MicrophoneArrayConfig& mic_cfg,
                                    const LoudspeakerArrayConfig& ls_cfg);

/// Pressure transfer at every DFT bin. Bin 0 and the Nyquist bin are zeroed
/// so the time responses are real. n_fft must cover the longest delay.
SpectrumMatrix synthesize_broadband(const std::vector<Reflection>& reflections,
                                    const MicrophoneArrayConfig& mic_cfg,
                                    const LoudspeakerArrayConfig& ls_cfg, double fs,
                                    std::size_t n_fft);

/// Adds identification noise bin by bin. Per-element variance at each bin is
/// 10^(misalignment_db/10) * ||H||_F^2 / element_count; streams are derived
/// from (seed, bin), so the result does not depend on evaluation order.
SpectrumMatrix add_identification_noise(const SpectrumMatrix& spec, const NoiseSpec& noise);

/// Per-entry time gate: inverse transform, multiply by the Welch window
/// (zero outside), transform back.
SpectrumMatrix apply_time_window(const SpectrumMatrix& spec, const WindowSpec& win);

/// Keeps only the bins whose frequency lies in [freq_lo_hz, freq_hi_hz].
SpectrumMatrix slice_band(const SpectrumMatrix& spec, double freq_lo_hz, double freq_hi_hz);

/// Divides each SH-order row block by the rigid-sphere radial response.
/// Throws ConditioningError when any |b_n| falls below floor_rel times the
/// largest |b| magnitude at the same frequency.
SpectrumMatrix plane_wave_decompose(const SpectrumMatrix& spec, const MicrophoneArrayConfig& mic_cfg,
                                    double floor_rel = 1e-3);

/// Time response of a single matrix entry across the whole DFT grid.
std::vector<double> entry_time_response(const SpectrumMatrix& spec, std::size_t row, std::size_t col);

}  // namespace mimosa
