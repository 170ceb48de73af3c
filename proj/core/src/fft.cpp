#include "mimosa/fft.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace mimosa {

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

void fft_inplace(CVector& data, int sign) {
    const std::size_t n = data.size();
    if (!is_power_of_two(n)) throw std::invalid_argument("fft_inplace: size must be a power of two");
    if (n < 2) return;

    // Bit-reversal permutation.
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(data[i], data[j]);
    }

    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = sign * 2.0 * std::numbers::pi / static_cast<double>(len);
        const Complex wlen = std::polar(1.0, ang);
        for (std::size_t i = 0; i < n; i += len) {
            Complex w{1.0, 0.0};
            for (std::size_t k = 0; k < len / 2; ++k) {
                const Complex u = data[i + k];
                const Complex v = data[i + k + len / 2] * w;
                data[i + k] = u + v;
                data[i + k + len / 2] = u - v;
                w *= wlen;
            }
        }
    }
}

std::vector<double> spectrum_to_time(const CVector& half_spectrum, std::size_t n_fft) {
    if (!is_power_of_two(n_fft)) throw std::invalid_argument("spectrum_to_time: n_fft must be a power of two");
    if (half_spectrum.size() != n_fft / 2 + 1)
        throw std::invalid_argument("spectrum_to_time: expected n_fft/2+1 bins");

    CVector full(n_fft);
    full[0] = half_spectrum[0].real();
    full[n_fft / 2] = half_spectrum[n_fft / 2].real();
    for (std::size_t k = 1; k < n_fft / 2; ++k) {
        full[k] = half_spectrum[k];
        full[n_fft - k] = std::conj(half_spectrum[k]);
    }
    fft_inplace(full, -1);
    std::vector<double> out(n_fft);
    const double scale = 1.0 / static_cast<double>(n_fft);
    for (std::size_t t = 0; t < n_fft; ++t) out[t] = full[t].real() * scale;
    return out;
}

CVector time_to_spectrum(const std::vector<double>& samples) {
    const std::size_t n = samples.size();
    if (!is_power_of_two(n)) throw std::invalid_argument("time_to_spectrum: size must be a power of two");
    CVector full(n);
    for (std::size_t t = 0; t < n; ++t) full[t] = samples[t];
    fft_inplace(full, +1);
    return CVector(full.begin(), full.begin() + static_cast<std::ptrdiff_t>(n / 2 + 1));
}

}  // namespace mimosa
