#include "mimosa/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "mimosa/errors.hpp"

namespace mimosa {

namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) return "";
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

double to_double(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument("");
        return v;
    } catch (const std::exception&) {
        throw ConfigError("config: key '" + key + "' expects a number, got '" + value + "'");
    }
}

long long to_int(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const long long v = std::stoll(value, &pos);
        if (pos != value.size()) throw std::invalid_argument("");
        return v;
    } catch (const std::exception&) {
        throw ConfigError("config: key '" + key + "' expects an integer, got '" + value + "'");
    }
}

Vec3 to_vec3(const std::string& key, const std::string& value) {
    std::istringstream in(value);
    Vec3 v{};
    if (!(in >> v[0] >> v[1] >> v[2])) throw ConfigError("config: key '" + key + "' expects three numbers");
    std::string rest;
    if (in >> rest) throw ConfigError("config: key '" + key + "' expects exactly three numbers");
    return v;
}

}  // namespace

std::string method_name(Method m) {
    switch (m) {
        case Method::Modal: return "modal";
        case Method::Frequency: return "frequency";
        case Method::Combined: return "combined";
    }
    throw std::logic_error("method_name: unreachable");
}

Method method_from_name(const std::string& name) {
    if (name == "modal") return Method::Modal;
    if (name == "frequency") return Method::Frequency;
    if (name == "combined") return Method::Combined;
    throw ConfigError("config: unknown analysis method '" + name + "' (expected modal, frequency or combined)");
}

LoudspeakerArrayConfig ExperimentConfig::loudspeaker_config() const {
    LoudspeakerArrayConfig cfg;
    cfg.radius_m = ls_radius_m;
    cfg.order = ls_order;
    cfg.aperture_rad = aperture_rad_override > 0.0
                           ? aperture_rad_override
                           : cap_aperture_from_diameter(membrane_diameter_m, ls_radius_m);
    cfg.air_density = air_density;
    cfg.sound_speed = scene.sound_speed;
    return cfg;
}

MicrophoneArrayConfig ExperimentConfig::mic_config() const {
    MicrophoneArrayConfig cfg;
    cfg.radius_m = mic_radius_m;
    cfg.order = mic_order;
    cfg.sound_speed = scene.sound_speed;
    return cfg;
}

void ExperimentConfig::validate() const {
    // Comparisons alone let NaN through, so check finiteness up front.
    const double numeric_fields[] = {scene.room.dims[0], scene.room.dims[1], scene.room.dims[2],
                                     scene.room.wall_reflection, scene.mic_pos[0], scene.mic_pos[1],
                                     scene.mic_pos[2], scene.loudspeaker_pos[0], scene.loudspeaker_pos[1],
                                     scene.loudspeaker_pos[2], scene.sound_speed, max_image_delay_s,
                                     ls_radius_m, membrane_diameter_m, aperture_rad_override, air_density,
                                     mic_radius_m, sample_rate_hz, window.start_s, frequency_hz,
                                     band_lo_hz, band_hi_hz, grid_resolution_deg, peak_min_separation_deg,
                                     doa_tolerance_deg, pwd_floor_rel};
    for (double v : numeric_fields)
        if (!std::isfinite(v)) throw ConfigError("config: nonfinite numeric value");

    try {
        scene.validate();
        loudspeaker_config().validate();
        mic_config().validate();
        window.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    if (max_image_delay_s <= 0.0) throw ConfigError("config: max_image_delay_s must be positive");
    if (sample_rate_hz <= 0.0) throw ConfigError("config: sample_rate_hz must be positive");
    if (n_fft < 2 || (n_fft & (n_fft - 1)) != 0) throw ConfigError("config: n_fft must be a power of two");
    if (max_image_delay_s * sample_rate_hz >= static_cast<double>(n_fft))
        throw ConfigError("config: n_fft too short for max_image_delay_s");
    if (window.start_s * sample_rate_hz + static_cast<double>(window.length_samples) >
        static_cast<double>(n_fft))
        throw ConfigError("config: time window extends past the DFT grid");
    if (!(std::isfinite(noise.misalignment_db) ||
          (std::isinf(noise.misalignment_db) && noise.misalignment_db < 0.0)))
        throw ConfigError("config: misalignment_db must be finite or -inf");
    const double nyquist = sample_rate_hz / 2.0;
    if (method == Method::Modal) {
        if (frequency_hz <= 0.0 || frequency_hz >= nyquist)
            throw ConfigError("config: frequency_hz must lie in (0, fs/2)");
    } else {
        if (band_lo_hz <= 0.0 || band_hi_hz >= nyquist || band_lo_hz > band_hi_hz)
            throw ConfigError("config: analysis band must lie in (0, fs/2) with band_lo_hz <= band_hi_hz");
    }
    if (truncation_order > ls_order)
        throw ConfigError("config: truncation_order exceeds the loudspeaker order");
    if (source_count == 0) throw ConfigError("config: source_count must be positive");
    if (static_cast<int>(source_count) >= sh_count(mic_order))
        throw ConfigError("config: source_count leaves no noise subspace for this microphone order");
    if (grid_resolution_deg <= 0.0) throw ConfigError("config: grid_resolution_deg must be positive");
    if (peak_min_separation_deg < 0.0) throw ConfigError("config: peak_min_separation_deg must be nonnegative");
    if (doa_tolerance_deg <= 0.0) throw ConfigError("config: doa_tolerance_deg must be positive");
    if (pwd_floor_rel < 0.0 || pwd_floor_rel >= 1.0)
        throw ConfigError("config: pwd_floor_rel must lie in [0, 1)");
    if (output_dir.empty()) throw ConfigError("config: output directory must not be empty");
}

ExperimentConfig reference_config() { return ExperimentConfig{}; }

ExperimentConfig parse_config(const std::string& text) {
    ExperimentConfig cfg;
    std::istringstream in(text);
    std::string line;
    std::string section;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError("config line " + std::to_string(line_no) + ": malformed section header");
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(line_no) + ": expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        const std::string qual = section + "." + key;

        if (qual == "room.dimensions_m") cfg.scene.room.dims = to_vec3(qual, value);
        else if (qual == "room.wall_reflection") cfg.scene.room.wall_reflection = to_double(qual, value);
        else if (qual == "scene.mic_position_m") cfg.scene.mic_pos = to_vec3(qual, value);
        else if (qual == "scene.loudspeaker_position_m") cfg.scene.loudspeaker_pos = to_vec3(qual, value);
        else if (qual == "scene.sound_speed_mps") cfg.scene.sound_speed = to_double(qual, value);
        else if (qual == "scene.max_image_delay_s") cfg.max_image_delay_s = to_double(qual, value);
        else if (qual == "loudspeaker_array.radius_m") cfg.ls_radius_m = to_double(qual, value);
        else if (qual == "loudspeaker_array.sh_order") cfg.ls_order = static_cast<int>(to_int(qual, value));
        else if (qual == "loudspeaker_array.membrane_diameter_m") cfg.membrane_diameter_m = to_double(qual, value);
        else if (qual == "loudspeaker_array.aperture_rad") cfg.aperture_rad_override = to_double(qual, value);
        else if (qual == "loudspeaker_array.air_density_kgm3") cfg.air_density = to_double(qual, value);
        else if (qual == "microphone_array.radius_m") cfg.mic_radius_m = to_double(qual, value);
        else if (qual == "microphone_array.sh_order") cfg.mic_order = static_cast<int>(to_int(qual, value));
        else if (qual == "signal.sample_rate_hz") cfg.sample_rate_hz = to_double(qual, value);
        else if (qual == "signal.n_fft") cfg.n_fft = static_cast<std::size_t>(to_int(qual, value));
        else if (qual == "signal.window_start_s") cfg.window.start_s = to_double(qual, value);
        else if (qual == "signal.window_length_samples")
            cfg.window.length_samples = static_cast<std::size_t>(to_int(qual, value));
        else if (qual == "noise.misalignment_db") cfg.noise.misalignment_db = to_double(qual, value);
        else if (qual == "noise.seed") cfg.noise.seed = static_cast<std::uint64_t>(to_int(qual, value));
        else if (qual == "analysis.method") cfg.method = method_from_name(value);
        else if (qual == "analysis.frequency_hz") cfg.frequency_hz = to_double(qual, value);
        else if (qual == "analysis.band_lo_hz") cfg.band_lo_hz = to_double(qual, value);
        else if (qual == "analysis.band_hi_hz") cfg.band_hi_hz = to_double(qual, value);
        else if (qual == "analysis.truncation_order") cfg.truncation_order = static_cast<int>(to_int(qual, value));
        else if (qual == "analysis.source_count") cfg.source_count = static_cast<std::size_t>(to_int(qual, value));
        else if (qual == "analysis.grid_resolution_deg") cfg.grid_resolution_deg = to_double(qual, value);
        else if (qual == "analysis.peak_min_separation_deg") cfg.peak_min_separation_deg = to_double(qual, value);
        else if (qual == "analysis.doa_tolerance_deg") cfg.doa_tolerance_deg = to_double(qual, value);
        else if (qual == "analysis.pwd_floor_rel") cfg.pwd_floor_rel = to_double(qual, value);
        else if (qual == "output.directory") cfg.output_dir = value;
        else throw ConfigError("config line " + std::to_string(line_no) + ": unknown key '" + qual + "'");
    }
    cfg.validate();
    return cfg;
}

std::string serialize_config(const ExperimentConfig& cfg) {
    std::ostringstream out;
    out << "[room]\n";
    out << "dimensions_m = " << format_double(cfg.scene.room.dims[0]) << ' '
        << format_double(cfg.scene.room.dims[1]) << ' ' << format_double(cfg.scene.room.dims[2]) << '\n';
    out << "wall_reflection = " << format_double(cfg.scene.room.wall_reflection) << '\n';
    out << "\n[scene]\n";
    out << "mic_position_m = " << format_double(cfg.scene.mic_pos[0]) << ' '
        << format_double(cfg.scene.mic_pos[1]) << ' ' << format_double(cfg.scene.mic_pos[2]) << '\n';
    out << "loudspeaker_position_m = " << format_double(cfg.scene.loudspeaker_pos[0]) << ' '
        << format_double(cfg.scene.loudspeaker_pos[1]) << ' '
        << format_double(cfg.scene.loudspeaker_pos[2]) << '\n';
    out << "sound_speed_mps = " << format_double(cfg.scene.sound_speed) << '\n';
    out << "max_image_delay_s = " << format_double(cfg.max_image_delay_s) << '\n';
    out << "\n[loudspeaker_array]\n";
    out << "radius_m = " << format_double(cfg.ls_radius_m) << '\n';
    out << "sh_order = " << cfg.ls_order << '\n';
    out << "membrane_diameter_m = " << format_double(cfg.membrane_diameter_m) << '\n';
    if (cfg.aperture_rad_override > 0.0)
        out << "aperture_rad = " << format_double(cfg.aperture_rad_override) << '\n';
    out << "air_density_kgm3 = " << format_double(cfg.air_density) << '\n';
    out << "\n[microphone_array]\n";
    out << "radius_m = " << format_double(cfg.mic_radius_m) << '\n';
    out << "sh_order = " << cfg.mic_order << '\n';
    out << "\n[signal]\n";
    out << "sample_rate_hz = " << format_double(cfg.sample_rate_hz) << '\n';
    out << "n_fft = " << cfg.n_fft << '\n';
    out << "window_start_s = " << format_double(cfg.window.start_s) << '\n';
    out << "window_length_samples = " << cfg.window.length_samples << '\n';
    out << "\n[noise]\n";
    out << "misalignment_db = " << format_double(cfg.noise.misalignment_db) << '\n';
    out << "seed = " << cfg.noise.seed << '\n';
    out << "\n[analysis]\n";
    out << "method = " << method_name(cfg.method) << '\n';
    out << "frequency_hz = " << format_double(cfg.frequency_hz) << '\n';
    out << "band_lo_hz = " << format_double(cfg.band_lo_hz) << '\n';
    out << "band_hi_hz = " << format_double(cfg.band_hi_hz) << '\n';
    out << "truncation_order = " << cfg.truncation_order << '\n';
    out << "source_count = " << cfg.source_count << '\n';
    out << "grid_resolution_deg = " << format_double(cfg.grid_resolution_deg) << '\n';
    out << "peak_min_separation_deg = " << format_double(cfg.peak_min_separation_deg) << '\n';
    out << "doa_tolerance_deg = " << format_double(cfg.doa_tolerance_deg) << '\n';
    out << "pwd_floor_rel = " << format_double(cfg.pwd_floor_rel) << '\n';
    out << "\n[output]\n";
    out << "directory = " << cfg.output_dir << '\n';
    return out.str();
}

ExperimentConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

}  // namespace mimosa
