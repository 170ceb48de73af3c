#pragma once

#include <cstdint>
#include <string>

#include "mimosa/array_model.hpp"
#include "mimosa/room_model.hpp"
#include "mimosa/transfer_synthesis.hpp"

namespace mimosa {

enum class Method { Modal, Frequency, Combined };

std::string method_name(Method m);
Method method_from_name(const std::string& name);

/// Everything one experiment run needs, in the file layout of the shipped
/// configs (INI-style sections, `key = value` lines, `#` comments).
struct ExperimentConfig {
    // [room] / [scene]
    SceneConfig scene;
    double max_image_delay_s = 0.08;

    // [loudspeaker_array]
    double ls_radius_m = 0.1;
    int ls_order = 3;
    double membrane_diameter_m = 0.0508;
    double aperture_rad_override = 0.0;  // 0 = derive from the membrane diameter (chord)
    double air_density = 1.2;

    // [microphone_array]
    double mic_radius_m = 0.07;
    int mic_order = 2;

    // [signal]
    double sample_rate_hz = 48000.0;
    std::size_t n_fft = 8192;
    WindowSpec window{0.007, 1056};

    // [noise]
    NoiseSpec noise{-30.0, 5};

    // [analysis]
    Method method = Method::Modal;
    double frequency_hz = 1600.0;
    double band_lo_hz = 1000.0;
    double band_hi_hz = 1600.0;
    int truncation_order = -1;  // -1 = keep the full loudspeaker order
    std::size_t source_count = 6;
    double grid_resolution_deg = 1.0;
    double peak_min_separation_deg = 5.0;
    double doa_tolerance_deg = 2.0;
    double pwd_floor_rel = 1e-3;

    // [output]
    std::string output_dir = "out";

    LoudspeakerArrayConfig loudspeaker_config() const;
    MicrophoneArrayConfig mic_config() const;

    /// SH order in effect after optional truncation.
    int effective_ls_order() const { return truncation_order >= 0 ? truncation_order : ls_order; }

    void validate() const;

    bool operator==(const ExperimentConfig&) const = default;
};

/// The bundled reference setup (the values in configs/paper.cfg).
ExperimentConfig reference_config();

ExperimentConfig parse_config(const std::string& text);
std::string serialize_config(const ExperimentConfig& cfg);
ExperimentConfig load_config_file(const std::string& path);

}  // namespace mimosa
