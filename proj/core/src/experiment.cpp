#include "mimosa/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <future>
#include <limits>

#include <json.hpp>

#include "mimosa/errors.hpp"
#include "mimosa/io.hpp"
#include "mimosa/smoothing.hpp"
#include "mimosa/transfer_synthesis.hpp"

namespace mimosa {

namespace {

namespace fs = std::filesystem;

nlohmann::ordered_json doa_json(const DoaReport& d) {
    return {{"theta_deg", d.estimated.theta_deg()},
            {"phi_deg", d.estimated.phi_deg()},
            {"peak_value", d.peak_value},
            {"truth_theta_deg", d.truth.theta_deg()},
            {"truth_phi_deg", d.truth.phi_deg()},
            {"error_deg", d.error_deg}};
}

nlohmann::ordered_json result_to_json(const ExperimentResult& r) {
    nlohmann::ordered_json j;
    j["method"] = r.method;
    j["seed"] = r.seed;
    j["configured_source_count"] = r.configured_source_count;
    j["estimated_signal_count"] = r.estimated_signal_count;
    j["eigenvalues"] = r.eigenvalues;
    j["peak_deficit"] = r.peak_deficit;
    j["peaks_found"] = r.peaks_found;
    nlohmann::ordered_json doas = nlohmann::ordered_json::array();
    for (const auto& d : r.doas) doas.push_back(doa_json(d));
    j["doas"] = doas;
    j["max_error_deg"] = r.max_error_deg;
    j["doa_tolerance_deg"] = r.doa_tolerance_deg;
    j["doa_recovery_pass"] = r.doa_recovery_pass;
    j["output_files"] = r.output_files;
    return j;
}

}  // namespace

std::string result_json(const ExperimentResult& r) { return result_to_json(r).dump(2) + "\n"; }

std::vector<Reflection> gated_reflections(const std::vector<Reflection>& all, const WindowSpec& win,
                                          double fs) {
    const double t_lo = win.start_s;
    const double t_hi = win.start_s + static_cast<double>(win.length_samples - 1) / fs;
    std::vector<Reflection> out;
    for (const auto& r : all)
        if (r.delay_s >= t_lo && r.delay_s <= t_hi) out.push_back(r);
    return out;
}

std::vector<DoaReport> match_doas(const DoaEstimate& est, const std::vector<Reflection>& truth) {
    const std::size_t n_est = est.directions.size();
    std::vector<bool> est_used(n_est, false);
    std::vector<bool> truth_used(truth.size(), false);
    std::vector<DoaReport> reports;

    // Repeatedly take the globally closest (estimate, truth) pair.
    const std::size_t pairs = std::min(n_est, truth.size());
    for (std::size_t iter = 0; iter < pairs; ++iter) {
        double best = std::numeric_limits<double>::infinity();
        std::size_t bi = 0, bj = 0;
        for (std::size_t i = 0; i < n_est; ++i) {
            if (est_used[i]) continue;
            for (std::size_t j = 0; j < truth.size(); ++j) {
                if (truth_used[j]) continue;
                const double err = great_circle_deg(est.directions[i], truth[j].doa);
                if (err < best) {
                    best = err;
                    bi = i;
                    bj = j;
                }
            }
        }
        est_used[bi] = true;
        truth_used[bj] = true;
        reports.push_back({est.directions[bi], est.peak_values[bi], truth[bj].doa, best});
    }
    std::sort(reports.begin(), reports.end(),
              [](const DoaReport& a, const DoaReport& b) { return a.peak_value > b.peak_value; });
    return reports;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
    cfg.validate();
    fs::create_directories(cfg.output_dir);
    const auto path_of = [&](const std::string& name) { return (fs::path(cfg.output_dir) / name).string(); };

    ExperimentResult result;
    result.method = method_name(cfg.method);
    result.seed = cfg.noise.seed;
    result.doa_tolerance_deg = cfg.doa_tolerance_deg;

    const MicrophoneArrayConfig mic_cfg = cfg.mic_config();
    const LoudspeakerArrayConfig ls_cfg = cfg.loudspeaker_config();

    // Geometry and ground truth.
    const std::vector<Reflection> images = enumerate_images(cfg.scene, cfg.max_image_delay_s);
    result.ground_truth = gated_reflections(images, cfg.window, cfg.sample_rate_hz);
    write_reflection_table_csv(path_of("reflections.csv"), result.ground_truth);
    write_text_file(path_of("reflections.json"), reflection_table_json(result.ground_truth));
    result.output_files["reflections_csv"] = path_of("reflections.csv");
    result.output_files["reflections_json"] = path_of("reflections.json");

    result.configured_source_count = cfg.source_count;

    // Synthesis, identification noise, time gate.
    SpectrumMatrix spec = synthesize_broadband(images, mic_cfg, ls_cfg, cfg.sample_rate_hz, cfg.n_fft);
    spec = add_identification_noise(spec, cfg.noise);
    const SpectrumMatrix gated = apply_time_window(spec, cfg.window);

    write_rir_excerpt_csv(path_of("rir_excerpt.csv"), spec, 0, 0, 0.035, cfg.window);
    result.output_files["rir_excerpt_csv"] = path_of("rir_excerpt.csv");

    // Analysis band, plane-wave decomposition, optional order truncation.
    const bool single_bin = cfg.method == Method::Modal;
    SpectrumMatrix band;
    if (single_bin) {
        const std::size_t k = gated.nearest_bin(cfg.frequency_hz);
        band.fs = gated.fs;
        band.n_fft = gated.n_fft;
        band.freqs = {gated.freqs[k]};
        band.mats = {gated.mats[k]};
    } else {
        band = slice_band(gated, cfg.band_lo_hz, cfg.band_hi_hz);
    }
    const SpectrumMatrix pw = plane_wave_decompose(band, mic_cfg, cfg.pwd_floor_rel);

    const int order = cfg.effective_ls_order();
    std::vector<Matrix> transfers;
    transfers.reserve(pw.bins());
    for (const auto& m : pw.mats)
        transfers.push_back(cfg.truncation_order >= 0 ? truncate_loudspeaker_order(m, cfg.ls_order, order)
                                                      : m);

    // Smoothing.
    CrossSpectrum cross;
    switch (cfg.method) {
        case Method::Modal:
            cross = modal_smooth(transfers.front(), order);
            break;
        case Method::Frequency: {
            std::vector<CVector> omni;
            omni.reserve(transfers.size());
            for (const auto& m : transfers) omni.push_back(modal_vector(m, 0, 0));
            cross = frequency_smooth(omni);
            break;
        }
        case Method::Combined:
            cross = combined_smooth(transfers, order);
            break;
    }
    cross.meta.freq_lo_hz = pw.freqs.front();
    cross.meta.freq_hi_hz = pw.freqs.back();
    write_cross_spectrum(path_of("cross_spectrum"), cross);
    result.output_files["cross_spectrum_csv"] = path_of("cross_spectrum.csv");
    result.output_files["cross_spectrum_meta"] = path_of("cross_spectrum.meta.json");

    // Subspace split and MUSIC.
    const EigenDecomposition eig = hermitian_eig(cross);
    result.eigenvalues = eig.values;
    result.estimated_signal_count = estimate_signal_count(eig);
    write_eigenvalues_csv(path_of("eigenvalues.csv"), eig.values);
    result.output_files["eigenvalues_csv"] = path_of("eigenvalues.csv");

    const Matrix basis = noise_subspace(eig, cfg.source_count);
    const SphereGrid grid = make_grid(cfg.grid_resolution_deg);
    const MusicSpectrum music = music_spectrum(basis, grid, mic_cfg.order);
    write_music_spectrum_csv(path_of("music_spectrum.csv"), music);
    result.output_files["music_spectrum_csv"] = path_of("music_spectrum.csv");

    DoaEstimate est;
    try {
        est = find_peaks(music, cfg.source_count, cfg.peak_min_separation_deg);
    } catch (const PeakDeficitError& e) {
        result.peak_deficit = true;
        result.peaks_found = e.found();
    }
    if (!result.peak_deficit) {
        result.peaks_found = est.directions.size();
        result.doas = match_doas(est, result.ground_truth);
        result.max_error_deg = 0.0;
        for (const auto& d : result.doas) result.max_error_deg = std::max(result.max_error_deg, d.error_deg);
        result.doa_recovery_pass = result.doas.size() == result.ground_truth.size() &&
                                   result.max_error_deg <= cfg.doa_tolerance_deg;
    }

    nlohmann::ordered_json doas_out;
    doas_out["method"] = result.method;
    doas_out["source_count"] = cfg.source_count;
    doas_out["peak_deficit"] = result.peak_deficit;
    nlohmann::ordered_json list = nlohmann::ordered_json::array();
    for (const auto& d : result.doas) list.push_back(doa_json(d));
    doas_out["directions"] = list;
    write_text_file(path_of("doa_estimates.json"), doas_out.dump(2) + "\n");
    result.output_files["doa_estimates_json"] = path_of("doa_estimates.json");

    write_text_file(path_of("summary.json"), result_json(result));
    result.output_files["summary_json"] = path_of("summary.json");
    return result;
}

std::string report_json(const ReferenceReport& r) {
    nlohmann::ordered_json j;
    j["experiments"] = {{"modal_full", result_to_json(r.modal_full)},
                        {"frequency", result_to_json(r.frequency)},
                        {"modal_low_order", result_to_json(r.modal_low_order)},
                        {"combined_low_order", result_to_json(r.combined_low_order)}};
    j["flags"]["modal_recovers_all_doas"] = r.modal_recovers_all_doas;
    j["flags"]["frequency_fails_doa_recovery"] = r.frequency_fails_doa_recovery;
    j["flags"]["combined_recovers_all_doas"] = r.combined_recovers_all_doas;
    j["flags"]["modal_signal_count"] = r.modal_full.estimated_signal_count;
    j["flags"]["frequency_signal_count"] = r.frequency.estimated_signal_count;
    j["flags"]["modal_low_order_signal_count"] = r.modal_low_order.estimated_signal_count;
    j["flags"]["combined_low_order_signal_count"] = r.combined_low_order.estimated_signal_count;
    return j.dump(2) + "\n";
}

ReferenceReport run_reference_experiments(const ExperimentConfig& base, const std::string& out_dir) {
    const auto variant = [&](const char* name, Method method, int truncation) {
        ExperimentConfig cfg = base;
        cfg.output_dir = (fs::path(out_dir) / name).string();
        cfg.method = method;
        cfg.truncation_order = truncation;
        return cfg;
    };

    // The four runs share nothing mutable and write to distinct directories.
    auto modal_full = std::async(std::launch::async, run_experiment, variant("modal_full", Method::Modal, -1));
    auto frequency = std::async(std::launch::async, run_experiment, variant("frequency", Method::Frequency, -1));
    auto modal_low = std::async(std::launch::async, run_experiment, variant("modal_low_order", Method::Modal, 1));
    auto combined = std::async(std::launch::async, run_experiment, variant("combined_low_order", Method::Combined, 1));

    ReferenceReport report;
    report.modal_full = modal_full.get();
    report.frequency = frequency.get();
    report.modal_low_order = modal_low.get();
    report.combined_low_order = combined.get();

    report.modal_recovers_all_doas = report.modal_full.doa_recovery_pass;
    report.frequency_fails_doa_recovery = !report.frequency.doa_recovery_pass;
    report.combined_recovers_all_doas = report.combined_low_order.doa_recovery_pass;

    fs::create_directories(out_dir);
    write_text_file((fs::path(out_dir) / "report.json").string(), report_json(report));
    return report;
}

}  // namespace mimosa
