#pragma once

#include <map>
#include <string>
#include <vector>

#include "mimosa/config.hpp"
#include "mimosa/doa_music.hpp"
#include "mimosa/room_model.hpp"

namespace mimosa {

/// One estimated direction matched against the closest remaining ground truth.
struct DoaReport {
    SphericalAngle estimated;
    double peak_value = 0.0;
    SphericalAngle truth;
    double error_deg = 0.0;
};

struct ExperimentResult {
    std::string method;
    std::uint64_t seed = 0;
    std::size_t configured_source_count = 0;
    std::size_t estimated_signal_count = 0;
    std::vector<double> eigenvalues;
    std::vector<Reflection> ground_truth;  // reflections inside the time gate

    bool peak_deficit = false;
    std::size_t peaks_found = 0;
    std::vector<DoaReport> doas;
    double max_error_deg = 0.0;
    bool doa_recovery_pass = false;
    double doa_tolerance_deg = 0.0;

    std::map<std::string, std::string> output_files;  // label -> path
};

std::string result_json(const ExperimentResult& r);

/// Runs the configured pipeline end to end and writes the result bundle
/// (reflection table, time-response excerpt, eigenvalues, MUSIC spectrum,
/// estimated directions, summary) into cfg.output_dir.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

/// The four bundled reference runs: full-order modal smoothing, frequency
/// smoothing, order-1 modal smoothing, and order-1 modal+frequency smoothing.
struct ReferenceReport {
    ExperimentResult modal_full;
    ExperimentResult frequency;
    ExperimentResult modal_low_order;
    ExperimentResult combined_low_order;

    bool modal_recovers_all_doas = false;
    bool frequency_fails_doa_recovery = false;
    bool combined_recovers_all_doas = false;
};

std::string report_json(const ReferenceReport& r);

ReferenceReport run_reference_experiments(const ExperimentConfig& base, const std::string& out_dir);

/// Reflections whose delay falls inside the nonzero span of the time gate.
std::vector<Reflection> gated_reflections(const std::vector<Reflection>& all, const WindowSpec& win,
                                          double fs);

/// Greedy best-pair matching of estimates to ground-truth arrival directions.
std::vector<DoaReport> match_doas(const DoaEstimate& est, const std::vector<Reflection>& truth);

}  // namespace mimosa
