#pragma once

#include <string>
#include <vector>

#include "mimosa/doa_music.hpp"
#include "mimosa/room_model.hpp"
#include "mimosa/smoothing.hpp"
#include "mimosa/transfer_synthesis.hpp"

namespace mimosa {

void write_text_file(const std::string& path, const std::string& content);

/// Ground-truth reflection table. Columns: index, delay_s, dor_beta_deg,
/// dor_psi_deg, doa_theta_deg, doa_phi_deg, amplitude, mirror_x, mirror_y,
/// mirror_z.
void write_reflection_table_csv(const std::string& path, const std::vector<Reflection>& reflections);
std::string reflection_table_json(const std::vector<Reflection>& reflections);

/// Long-format spectrum dump. Columns: bin, freq_hz, row, col, re, im.
void write_spectrum_csv(const std::string& path, const SpectrumMatrix& spec);

/// One channel of the time response with the gate trace. Columns: sample,
/// time_s, amplitude, window.
void write_rir_excerpt_csv(const std::string& path, const SpectrumMatrix& spec, std::size_t row,
                           std::size_t col, double t_max_s, const WindowSpec& win);

/// Every channel of the time response in long format. Columns: sample,
/// time_s, row, col, value. Large: n_fft * rows * cols lines.
void write_rir_csv(const std::string& path, const SpectrumMatrix& spec);

/// Compact binary containers (little-endian, 64-bit floats; layout described
/// in docs/formats.md).
void write_spectrum_binary(const std::string& path, const SpectrumMatrix& spec);
SpectrumMatrix read_spectrum_binary(const std::string& path);
void write_rir_binary(const std::string& path, const SpectrumMatrix& spec);

/// Cross-spectrum export: <prefix>.meta.json and <prefix>.csv
/// (columns: row, col, re, im).
void write_cross_spectrum(const std::string& path_prefix, const CrossSpectrum& s);

/// Columns: index, eigenvalue, db_rel_max (clamped at -400 dB).
void write_eigenvalues_csv(const std::string& path, const std::vector<double>& values);

/// Columns: theta_deg, phi_deg, value_db (normalized to the peak).
void write_music_spectrum_csv(const std::string& path, const MusicSpectrum& spec);

}  // namespace mimosa
