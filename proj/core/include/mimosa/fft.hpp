#pragma once

#include <vector>

#include "mimosa/matrix.hpp"

namespace mimosa {

/// In-place radix-2 transform, X[k] = sum_t x[t] exp(sign * 2*pi*i*k*t/N).
/// Size must be a power of two. No scaling is applied.
void fft_inplace(CVector& data, int sign);

bool is_power_of_two(std::size_t n);

/// Frequency-to-time synthesis used throughout this project: a transfer value
/// exp(+i*omega*tau) maps to a time peak at +tau. The half spectrum holds bins
/// 0..n_fft/2; negative bins are the conjugate mirror, so the result is real.
std::vector<double> spectrum_to_time(const CVector& half_spectrum, std::size_t n_fft);

/// Inverse of spectrum_to_time; returns bins 0..n_fft/2.
CVector time_to_spectrum(const std::vector<double>& samples);

}  // namespace mimosa
