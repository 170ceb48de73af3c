#include "mimosa/transfer_synthesis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "mimosa/errors.hpp"
#include "mimosa/fft.hpp"
#include "mimosa/sh_math.hpp"
#include "rng.hpp"

namespace mimosa {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::vector<SphericalAngle> doa_list(const std::vector<Reflection>& reflections) {
    std::vector<SphericalAngle> dirs;
    dirs.reserve(reflections.size());
    for (const auto& r : reflections) dirs.push_back(r.doa);
    return dirs;
}

std::vector<SphericalAngle> dor_list(const std::vector<Reflection>& reflections) {
    std::vector<SphericalAngle> dirs;
    dirs.reserve(reflections.size());
    for (const auto& r : reflections) dirs.push_back(r.dor);
    return dirs;
}

}  // namespace

std::size_t SpectrumMatrix::nearest_bin(double freq_hz) const {
    if (freqs.empty()) throw std::invalid_argument("SpectrumMatrix::nearest_bin: empty spectrum");
    std::size_t best = 0;
    double best_err = std::abs(freqs[0] - freq_hz);
    for (std::size_t k = 1; k < freqs.size(); ++k) {
        const double err = std::abs(freqs[k] - freq_hz);
        if (err < best_err) {
            best = k;
            best_err = err;
        }
    }
    return best;
}

void WindowSpec::validate() const {
    if (start_s < 0.0) throw std::invalid_argument("window: start must be nonnegative");
    if (length_samples < 1) throw std::invalid_argument("window: length must be at least one sample");
}

BeamformingVector BeamformingVector::channel_selector(int order, int n, int m) {
    if (order < 0 || n < 0 || n > order || std::abs(m) > n)
        throw std::invalid_argument("channel_selector: invalid (n, m) for order");
    BeamformingVector v;
    v.order = order;
    v.coeffs.assign(sh_count(order), Complex{});
    v.coeffs[sh_index(n, m)] = 1.0;
    return v;
}

double welch_window_value(std::size_t k, std::size_t length) {
    if (length == 1) return 1.0;
    const double half = (static_cast<double>(length) - 1.0) / 2.0;
    const double t = (static_cast<double>(k) - half) / half;
    return std::max(0.0, 1.0 - t * t);
}

Matrix assemble_pressure_transfer(double omega, const std::vector<Reflection>& reflections,
                                  const MicrophoneArrayConfig& mic_cfg,
                                  const LoudspeakerArrayConfig& ls_cfg) {
    if (reflections.empty()) throw std::invalid_argument("assemble_pressure_transfer: no reflections");
    const CVector b = mic_response_diagonal(omega, mic_cfg);
    const CVector g = loudspeaker_response_diagonal(omega, ls_cfg);

    Matrix h(b.size(), g.size());
    for (const auto& refl : reflections) {
        const SteeringVector mic_steer = steering_vector(refl.doa, mic_cfg.order);
        const SteeringVector ls_steer = steering_vector(refl.dor, ls_cfg.order);
        const Complex lam = propagation_factor(refl, omega);
        for (std::size_t i = 0; i < b.size(); ++i) {
            const Complex left = b[i] * std::conj(mic_steer.coeffs[i]) * lam;
            for (std::size_t j = 0; j < g.size(); ++j)
                h(i, j) += left * ls_steer.coeffs[j] * g[j];
        }
    }
    return h;
}

Matrix assemble_pressure_transfer_factored(double omega, const std::vector<Reflection>& reflections,
                                           const MicrophoneArrayConfig& mic_cfg,
                                           const LoudspeakerArrayConfig& ls_cfg) {
    if (reflections.empty()) throw std::invalid_argument("assemble_pressure_transfer_factored: no reflections");
    const Matrix mic_steer = steering_matrix(doa_list(reflections), mic_cfg.order);
    const Matrix ls_steer = steering_matrix(dor_list(reflections), ls_cfg.order);

    CVector lambda(reflections.size());
    for (std::size_t l = 0; l < reflections.size(); ++l)
        lambda[l] = propagation_factor(reflections[l], omega);

    Matrix left = mic_steer.adjoint();  // (N_M+1)^2 x L
    left.scale_cols(lambda);
    Matrix h = left * ls_steer;
    h.scale_rows(mic_response_diagonal(omega, mic_cfg));
    h.scale_cols(loudspeaker_response_diagonal(omega, ls_cfg));
    return h;
}

Matrix assemble_plane_wave_transfer(double omega, const std::vector<Reflection>& reflections,
                                    const MicrophoneArrayConfig& mic_cfg,
                                    const LoudspeakerArrayConfig& ls_cfg) {
    if (reflections.empty()) throw std::invalid_argument("assemble_plane_wave_transfer: no reflections");
    const Matrix mic_steer = steering_matrix(doa_list(reflections), mic_cfg.order);
    const Matrix ls_steer = steering_matrix(dor_list(reflections), ls_cfg.order);

    CVector lambda(reflections.size());
    for (std::size_t l = 0; l < reflections.size(); ++l)
        lambda[l] = propagation_factor(reflections[l], omega);

    Matrix left = mic_steer.adjoint();
    left.scale_cols(lambda);
    Matrix a = left * ls_steer;
    a.scale_cols(loudspeaker_response_diagonal(omega, ls_cfg));
    return a;
}

SpectrumMatrix synthesize_broadband(const std::vector<Reflection>& reflections,
                                    const MicrophoneArrayConfig& mic_cfg,
                                    const LoudspeakerArrayConfig& ls_cfg, double fs,
                                    std::size_t n_fft) {
    if (reflections.empty()) throw std::invalid_argument("synthesize_broadband: no reflections");
    if (fs <= 0.0) throw std::invalid_argument("synthesize_broadband: fs must be positive");
    if (!is_power_of_two(n_fft)) throw std::invalid_argument("synthesize_broadband: n_fft must be a power of two");

    double max_delay = 0.0;
    for (const auto& r : reflections) max_delay = std::max(max_delay, r.delay_s);
    if (max_delay * fs >= static_cast<double>(n_fft))
        throw std::invalid_argument("synthesize_broadband: n_fft too short for the longest reflection delay");

    const std::size_t rows = static_cast<std::size_t>(sh_count(mic_cfg.order));
    const std::size_t cols = static_cast<std::size_t>(sh_count(ls_cfg.order));

    // Frequency-independent steering factor, assembled once.
    const Matrix mic_steer = steering_matrix(doa_list(reflections), mic_cfg.order);
    const Matrix ls_steer = steering_matrix(dor_list(reflections), ls_cfg.order);
    const Matrix mic_steer_adj = mic_steer.adjoint();

    SpectrumMatrix spec;
    spec.fs = fs;
    spec.n_fft = n_fft;
    spec.freqs.resize(n_fft / 2 + 1);
    spec.mats.reserve(n_fft / 2 + 1);
    for (std::size_t k = 0; k <= n_fft / 2; ++k)
        spec.freqs[k] = static_cast<double>(k) * fs / static_cast<double>(n_fft);

    for (std::size_t k = 0; k <= n_fft / 2; ++k) {
        if (k == 0 || k == n_fft / 2) {
            spec.mats.emplace_back(rows, cols);  // zeroed so time responses stay real
            continue;
        }
        const double omega = kTwoPi * spec.freqs[k];
        CVector lambda(reflections.size());
        for (std::size_t l = 0; l < reflections.size(); ++l)
            lambda[l] = propagation_factor(reflections[l], omega);
        Matrix left = mic_steer_adj;
        left.scale_cols(lambda);
        Matrix h = left * ls_steer;
        h.scale_rows(mic_response_diagonal(omega, mic_cfg));
        h.scale_cols(loudspeaker_response_diagonal(omega, ls_cfg));
        spec.mats.push_back(std::move(h));
    }
    return spec;
}

SpectrumMatrix add_identification_noise(const SpectrumMatrix& spec, const NoiseSpec& noise) {
    SpectrumMatrix out = spec;
    if (std::isinf(noise.misalignment_db) && noise.misalignment_db < 0.0) return out;
    if (!std::isfinite(noise.misalignment_db))
        throw std::invalid_argument("add_identification_noise: misalignment must be finite or -inf");
    if (out.fs <= 0.0 || out.n_fft == 0)
        throw std::invalid_argument("add_identification_noise: spectrum lacks its DFT grid");

    const double bin_width = out.fs / static_cast<double>(out.n_fft);
    const double power_ratio = std::pow(10.0, noise.misalignment_db / 10.0);
    for (std::size_t k = 0; k < out.bins(); ++k) {
        Matrix& m = out.mats[k];
        const double hnorm2 = m.frobenius_norm() * m.frobenius_norm();
        if (hnorm2 == 0.0) continue;  // DC and Nyquist carry no signal
        const std::size_t count = m.rows() * m.cols();
        const double sigma2 = power_ratio * hnorm2 / static_cast<double>(count);
        const double comp_std = std::sqrt(sigma2 / 2.0);
        // Streams are tied to the absolute DFT bin, so slicing a band before
        // or after adding noise yields the same values.
        const auto abs_bin = static_cast<std::uint64_t>(std::llround(out.freqs[k] / bin_width));
        auto rng = detail::stream_for(noise.seed, abs_bin);
        for (std::size_t i = 0; i < m.rows(); ++i) {
            for (std::size_t j = 0; j < m.cols(); ++j) {
                double re, im;
                rng.normal_pair(re, im);
                m(i, j) += Complex{re * comp_std, im * comp_std};
            }
        }
    }
    return out;
}

SpectrumMatrix apply_time_window(const SpectrumMatrix& spec, const WindowSpec& win) {
    win.validate();
    if (spec.n_fft == 0 || spec.bins() != spec.n_fft / 2 + 1)
        throw std::invalid_argument("apply_time_window: spectrum must cover the full DFT grid");

    const auto start = static_cast<std::size_t>(std::llround(win.start_s * spec.fs));
    if (start + win.length_samples > spec.n_fft)
        throw std::invalid_argument("apply_time_window: window extends past the end of the time grid");

    std::vector<double> gate(spec.n_fft, 0.0);
    for (std::size_t k = 0; k < win.length_samples; ++k)
        gate[start + k] = welch_window_value(k, win.length_samples);

    SpectrumMatrix out = spec;
    const std::size_t rows = spec.rows();
    const std::size_t cols = spec.cols();
    CVector entry(spec.bins());
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j) {
            for (std::size_t k = 0; k < spec.bins(); ++k) entry[k] = spec.mats[k](i, j);
            std::vector<double> x = spectrum_to_time(entry, spec.n_fft);
            for (std::size_t t = 0; t < spec.n_fft; ++t) x[t] *= gate[t];
            const CVector windowed = time_to_spectrum(x);
            for (std::size_t k = 0; k < spec.bins(); ++k) out.mats[k](i, j) = windowed[k];
        }
    }
    return out;
}

SpectrumMatrix slice_band(const SpectrumMatrix& spec, double freq_lo_hz, double freq_hi_hz) {
    if (freq_lo_hz > freq_hi_hz) throw std::invalid_argument("slice_band: empty band");
    SpectrumMatrix out;
    out.fs = spec.fs;
    out.n_fft = spec.n_fft;
    for (std::size_t k = 0; k < spec.bins(); ++k) {
        if (spec.freqs[k] >= freq_lo_hz && spec.freqs[k] <= freq_hi_hz) {
            out.freqs.push_back(spec.freqs[k]);
            out.mats.push_back(spec.mats[k]);
        }
    }
    if (out.mats.empty()) throw std::invalid_argument("slice_band: no bins inside the band");
    return out;
}

SpectrumMatrix plane_wave_decompose(const SpectrumMatrix& spec, const MicrophoneArrayConfig& mic_cfg,
                                    double floor_rel) {
    if (static_cast<int>(spec.rows()) != sh_count(mic_cfg.order))
        throw std::invalid_argument("plane_wave_decompose: row count does not match the array order");

    SpectrumMatrix out = spec;
    for (std::size_t k = 0; k < spec.bins(); ++k) {
        const double freq = spec.freqs[k];
        if (freq <= 0.0)
            throw ConditioningError("plane_wave_decompose: radial response undefined at 0 Hz", freq, 0);
        const double omega = kTwoPi * freq;
        const CVector b = mic_response_diagonal(omega, mic_cfg);

        double max_mag = 0.0;
        for (const auto& v : b) max_mag = std::max(max_mag, std::abs(v));
        for (int n = 0; n <= mic_cfg.order; ++n) {
            const double mag = std::abs(b[sh_index(n, 0)]);
            if (mag < floor_rel * max_mag)
                throw ConditioningError("plane_wave_decompose: |b_" + std::to_string(n) +
                                            "| below conditioning floor at " + std::to_string(freq) + " Hz",
                                        freq, n);
        }

        CVector inv(b.size());
        for (std::size_t i = 0; i < b.size(); ++i) inv[i] = 1.0 / b[i];
        out.mats[k].scale_rows(inv);
    }
    return out;
}

std::vector<double> entry_time_response(const SpectrumMatrix& spec, std::size_t row, std::size_t col) {
    if (spec.n_fft == 0 || spec.bins() != spec.n_fft / 2 + 1)
        throw std::invalid_argument("entry_time_response: spectrum must cover the full DFT grid");
    if (row >= spec.rows() || col >= spec.cols())
        throw std::out_of_range("entry_time_response: channel index out of range");
    CVector entry(spec.bins());
    for (std::size_t k = 0; k < spec.bins(); ++k) entry[k] = spec.mats[k](row, col);
    return spectrum_to_time(entry, spec.n_fft);
}

}  // namespace mimosa
