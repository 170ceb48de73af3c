#include "mimosa/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace mimosa {

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void append_u32(std::string& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

void append_f64(std::string& out, double v) {
    std::uint64_t bits;
    std::memcpy(&bits, &v, sizeof(bits));
    for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((bits >> (8 * i)) & 0xff));
}

std::uint32_t read_u32(std::istream& in) {
    unsigned char b[4];
    in.read(reinterpret_cast<char*>(b), 4);
    if (!in) throw std::runtime_error("binary container: truncated header");
    return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
           (static_cast<std::uint32_t>(b[2]) << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
}

double read_f64(std::istream& in) {
    unsigned char b[8];
    in.read(reinterpret_cast<char*>(b), 8);
    if (!in) throw std::runtime_error("binary container: truncated payload");
    std::uint64_t bits = 0;
    for (int i = 0; i < 8; ++i) bits |= static_cast<std::uint64_t>(b[i]) << (8 * i);
    double v;
    std::memcpy(&v, &bits, sizeof(v));
    return v;
}

constexpr char kSpectrumMagic[8] = {'M', 'I', 'M', 'O', 'S', 'P', 'E', 'C'};
constexpr char kRirMagic[8] = {'M', 'I', 'M', 'O', 'R', 'I', 'R', '\0'};

}  // namespace

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << content;
    if (!out) throw std::runtime_error("write failed: " + path);
}

void write_reflection_table_csv(const std::string& path, const std::vector<Reflection>& reflections) {
    std::string out =
        "index,delay_s,dor_beta_deg,dor_psi_deg,doa_theta_deg,doa_phi_deg,amplitude,mirror_x,mirror_y,mirror_z\n";
    for (std::size_t i = 0; i < reflections.size(); ++i) {
        const auto& r = reflections[i];
        out += std::to_string(i) + ',' + fmt(r.delay_s) + ',' + fmt(r.dor.theta_deg()) + ',' +
               fmt(r.dor.phi_deg()) + ',' + fmt(r.doa.theta_deg()) + ',' + fmt(r.doa.phi_deg()) + ',' +
               fmt(r.amplitude) + ',' + std::to_string(r.mirror_signs[0]) + ',' +
               std::to_string(r.mirror_signs[1]) + ',' + std::to_string(r.mirror_signs[2]) + '\n';
    }
    write_text_file(path, out);
}

std::string reflection_table_json(const std::vector<Reflection>& reflections) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < reflections.size(); ++i) {
        const auto& r = reflections[i];
        arr.push_back({{"index", i},
                       {"delay_s", r.delay_s},
                       {"dor_beta_deg", r.dor.theta_deg()},
                       {"dor_psi_deg", r.dor.phi_deg()},
                       {"doa_theta_deg", r.doa.theta_deg()},
                       {"doa_phi_deg", r.doa.phi_deg()},
                       {"amplitude", r.amplitude},
                       {"bounce_count", r.bounce_count},
                       {"mirror_signs", r.mirror_signs}});
    }
    return arr.dump(2) + "\n";
}

void write_spectrum_csv(const std::string& path, const SpectrumMatrix& spec) {
    std::string out = "bin,freq_hz,row,col,re,im\n";
    for (std::size_t k = 0; k < spec.bins(); ++k) {
        for (std::size_t i = 0; i < spec.rows(); ++i) {
            for (std::size_t j = 0; j < spec.cols(); ++j) {
                const Complex v = spec.mats[k](i, j);
                out += std::to_string(k) + ',' + fmt(spec.freqs[k]) + ',' + std::to_string(i) + ',' +
                       std::to_string(j) + ',' + fmt17(v.real()) + ',' + fmt17(v.imag()) + '\n';
            }
        }
    }
    write_text_file(path, out);
}

void write_rir_excerpt_csv(const std::string& path, const SpectrumMatrix& spec, std::size_t row,
                           std::size_t col, double t_max_s, const WindowSpec& win) {
    const std::vector<double> x = entry_time_response(spec, row, col);
    const auto start = static_cast<std::size_t>(std::llround(win.start_s * spec.fs));
    auto n = static_cast<std::size_t>(t_max_s * spec.fs);
    n = std::min(n, x.size());
    std::string out = "sample,time_s,amplitude,window\n";
    for (std::size_t t = 0; t < n; ++t) {
        double w = 0.0;
        if (t >= start && t < start + win.length_samples) w = welch_window_value(t - start, win.length_samples);
        out += std::to_string(t) + ',' + fmt(static_cast<double>(t) / spec.fs) + ',' + fmt17(x[t]) + ',' +
               fmt(w) + '\n';
    }
    write_text_file(path, out);
}

void write_rir_csv(const std::string& path, const SpectrumMatrix& spec) {
    std::string out = "sample,time_s,row,col,value\n";
    for (std::size_t i = 0; i < spec.rows(); ++i) {
        for (std::size_t j = 0; j < spec.cols(); ++j) {
            const std::vector<double> x = entry_time_response(spec, i, j);
            for (std::size_t t = 0; t < x.size(); ++t)
                out += std::to_string(t) + ',' + fmt(static_cast<double>(t) / spec.fs) + ',' +
                       std::to_string(i) + ',' + std::to_string(j) + ',' + fmt17(x[t]) + '\n';
        }
    }
    write_text_file(path, out);
}

void write_spectrum_binary(const std::string& path, const SpectrumMatrix& spec) {
    std::string out(kSpectrumMagic, sizeof(kSpectrumMagic));
    append_u32(out, 1);  // version
    append_u32(out, static_cast<std::uint32_t>(spec.rows()));
    append_u32(out, static_cast<std::uint32_t>(spec.cols()));
    append_u32(out, static_cast<std::uint32_t>(spec.n_fft));
    append_u32(out, static_cast<std::uint32_t>(spec.bins()));
    append_f64(out, spec.fs);
    for (std::size_t k = 0; k < spec.bins(); ++k) {
        append_f64(out, spec.freqs[k]);
        for (std::size_t i = 0; i < spec.rows(); ++i) {
            for (std::size_t j = 0; j < spec.cols(); ++j) {
                append_f64(out, spec.mats[k](i, j).real());
                append_f64(out, spec.mats[k](i, j).imag());
            }
        }
    }
    write_text_file(path, out);
}

SpectrumMatrix read_spectrum_binary(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open: " + path);
    char magic[8];
    in.read(magic, 8);
    if (!in || std::memcmp(magic, kSpectrumMagic, 8) != 0)
        throw std::runtime_error("binary container: bad magic in " + path);
    const std::uint32_t version = read_u32(in);
    if (version != 1) throw std::runtime_error("binary container: unsupported version");
    const std::uint32_t rows = read_u32(in);
    const std::uint32_t cols = read_u32(in);
    const std::uint32_t n_fft = read_u32(in);
    const std::uint32_t bins = read_u32(in);
    SpectrumMatrix spec;
    spec.n_fft = n_fft;
    spec.fs = read_f64(in);
    spec.freqs.resize(bins);
    spec.mats.reserve(bins);
    for (std::uint32_t k = 0; k < bins; ++k) {
        spec.freqs[k] = read_f64(in);
        Matrix m(rows, cols);
        for (std::uint32_t i = 0; i < rows; ++i)
            for (std::uint32_t j = 0; j < cols; ++j) {
                const double re = read_f64(in);
                const double im = read_f64(in);
                m(i, j) = {re, im};
            }
        spec.mats.push_back(std::move(m));
    }
    return spec;
}

void write_rir_binary(const std::string& path, const SpectrumMatrix& spec) {
    std::string out(kRirMagic, sizeof(kRirMagic));
    append_u32(out, 1);
    append_u32(out, static_cast<std::uint32_t>(spec.rows()));
    append_u32(out, static_cast<std::uint32_t>(spec.cols()));
    append_u32(out, static_cast<std::uint32_t>(spec.n_fft));
    append_u32(out, static_cast<std::uint32_t>(spec.n_fft));  // sample count
    append_f64(out, spec.fs);
    for (std::size_t i = 0; i < spec.rows(); ++i) {
        for (std::size_t j = 0; j < spec.cols(); ++j) {
            const std::vector<double> x = entry_time_response(spec, i, j);
            for (double v : x) append_f64(out, v);
        }
    }
    write_text_file(path, out);
}

void write_cross_spectrum(const std::string& path_prefix, const CrossSpectrum& s) {
    nlohmann::ordered_json meta{{"estimator", s.meta.estimator},
                                {"freq_lo_hz", s.meta.freq_lo_hz},
                                {"freq_hi_hz", s.meta.freq_hi_hz},
                                {"average_count", s.meta.average_count},
                                {"dim", s.mat.rows()}};
    write_text_file(path_prefix + ".meta.json", meta.dump(2) + "\n");

    std::string out = "row,col,re,im\n";
    for (std::size_t i = 0; i < s.mat.rows(); ++i)
        for (std::size_t j = 0; j < s.mat.cols(); ++j)
            out += std::to_string(i) + ',' + std::to_string(j) + ',' + fmt17(s.mat(i, j).real()) + ',' +
                   fmt17(s.mat(i, j).imag()) + '\n';
    write_text_file(path_prefix + ".csv", out);
}

void write_eigenvalues_csv(const std::string& path, const std::vector<double>& values) {
    std::string out = "index,eigenvalue,db_rel_max\n";
    const double top = values.empty() ? 0.0 : values.front();
    for (std::size_t k = 0; k < values.size(); ++k) {
        double db = -400.0;
        if (top > 0.0 && values[k] > 0.0) db = std::max(-400.0, 10.0 * std::log10(values[k] / top));
        out += std::to_string(k) + ',' + fmt17(values[k]) + ',' + fmt(db) + '\n';
    }
    write_text_file(path, out);
}

void write_music_spectrum_csv(const std::string& path, const MusicSpectrum& spec) {
    double peak = 0.0;
    for (double v : spec.values) peak = std::max(peak, v);
    if (peak <= 0.0) peak = 1.0;
    std::string out = "theta_deg,phi_deg,value_db\n";
    out.reserve(spec.values.size() * 24);
    for (std::size_t g = 0; g < spec.values.size(); ++g) {
        const double db =
            spec.values[g] > 0.0 ? std::max(-400.0, 10.0 * std::log10(spec.values[g] / peak)) : -400.0;
        out += fmt(spec.grid.points[g].theta_deg()) + ',' + fmt(spec.grid.points[g].phi_deg()) + ',' +
               fmt(db) + '\n';
    }
    write_text_file(path, out);
}

}  // namespace mimosa
