#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>

#include "helpers.hpp"
#include "mimosa/config.hpp"
#include "mimosa/errors.hpp"
#include "mimosa/io.hpp"
#include "mimosa/transfer_synthesis.hpp"

using namespace mimosa;

namespace {

std::filesystem::path temp_dir(const std::string& name) {
    const auto dir = std::filesystem::temp_directory_path() / "mimosa_tests" / name;
    std::filesystem::create_directories(dir);
    return dir;
}

}  // namespace

TEST_CASE("config round trip is the identity") {
    const std::string text = R"(# sample setup
[room]
dimensions_m = 10 10 8
wall_reflection = 0.8

[scene]
mic_position_m = 5 5 3
loudspeaker_position_m = 2 2 1.75
sound_speed_mps = 343
max_image_delay_s = 0.05

[loudspeaker_array]
radius_m = 0.1
sh_order = 3
membrane_diameter_m = 0.0508
air_density_kgm3 = 1.2

[microphone_array]
radius_m = 0.07
sh_order = 2

[signal]
sample_rate_hz = 48000
n_fft = 8192
window_start_s = 0.007
window_length_samples = 1056

[noise]
misalignment_db = -30
seed = 7

[analysis]
method = combined
band_lo_hz = 1000
band_hi_hz = 1600
truncation_order = 1
source_count = 6
grid_resolution_deg = 2
peak_min_separation_deg = 5
doa_tolerance_deg = 2
pwd_floor_rel = 0.001

[output]
directory = out/sample
)";
    const ExperimentConfig cfg = parse_config(text);
    CHECK(cfg.method == Method::Combined);
    CHECK(cfg.truncation_order == 1);
    CHECK(cfg.noise.seed == 7);
    CHECK(cfg.output_dir == "out/sample");

    const ExperimentConfig again = parse_config(serialize_config(cfg));
    CHECK(again == cfg);

    // And once more through a file on disk.
    const auto path = temp_dir("config") / "roundtrip.cfg";
    write_text_file(path.string(), serialize_config(again));
    CHECK(load_config_file(path.string()) == cfg);
}

TEST_CASE("default configuration is the reference setup and validates") {
    const ExperimentConfig cfg = reference_config();
    CHECK_NOTHROW(cfg.validate());
    CHECK(cfg.scene.room.dims == Vec3{10.0, 10.0, 8.0});
    CHECK(cfg.window.length_samples == 1056);
    CHECK(cfg.loudspeaker_config().aperture_rad == doctest::Approx(std::asin(0.254)).epsilon(1e-14));
    const ExperimentConfig again = parse_config(serialize_config(cfg));
    CHECK(again == cfg);
}

TEST_CASE("config rejections") {
    CHECK_THROWS_AS(parse_config("[room]\nnope = 1\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("dimensions_m = 1 2\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("[analysis]\nmethod = fancy\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("[signal]\nn_fft = 1000\n"), ConfigError);

    ExperimentConfig cfg = reference_config();
    cfg.band_hi_hz = 30000.0;
    cfg.method = Method::Frequency;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);

    cfg = reference_config();
    cfg.mic_radius_m = -0.07;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);

    cfg = reference_config();
    cfg.source_count = 9;  // no noise subspace left for a 9-channel array
    CHECK_THROWS_AS(cfg.validate(), ConfigError);

    cfg = reference_config();
    cfg.truncation_order = 5;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);

    CHECK_THROWS_AS(parse_config("[room]\nwall_reflection = nan\n"), ConfigError);
    cfg = reference_config();
    cfg.scene.room.dims[1] = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
}

TEST_CASE("binary spectrum container round trip") {
    test_helpers::Rng rng(91);
    SpectrumMatrix spec;
    spec.fs = 48000.0;
    spec.n_fft = 64;
    for (std::size_t k = 0; k <= 32; ++k) {
        spec.freqs.push_back(static_cast<double>(k) * 48000.0 / 64.0);
        Matrix m(3, 4);
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 4; ++j)
                m(i, j) = Complex{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
        spec.mats.push_back(m);
    }

    const auto path = temp_dir("io") / "spectrum.bin";
    write_spectrum_binary(path.string(), spec);
    const SpectrumMatrix back = read_spectrum_binary(path.string());

    CHECK(back.fs == spec.fs);
    CHECK(back.n_fft == spec.n_fft);
    REQUIRE(back.bins() == spec.bins());
    for (std::size_t k = 0; k < spec.bins(); ++k) {
        CHECK(back.freqs[k] == spec.freqs[k]);
        CHECK((back.mats[k] - spec.mats[k]).frobenius_norm() == 0.0);
    }

    std::ofstream(path.string(), std::ios::binary) << "garbage";
    CHECK_THROWS(read_spectrum_binary(path.string()));
}

TEST_CASE("csv exports carry the documented headers") {
    const auto dir = temp_dir("csv");
    const auto scene = test_helpers::reference_scene();
    const auto images = enumerate_images(scene, 0.029);

    const auto refl_path = (dir / "reflections.csv").string();
    write_reflection_table_csv(refl_path, images);
    std::ifstream in(refl_path);
    std::string header;
    std::getline(in, header);
    CHECK(header ==
          "index,delay_s,dor_beta_deg,dor_psi_deg,doa_theta_deg,doa_phi_deg,amplitude,mirror_x,mirror_y,mirror_z");
    std::size_t rows = 0;
    std::string line;
    while (std::getline(in, line))
        if (!line.empty()) ++rows;
    CHECK(rows == images.size());

    // Long-format exports: header plus one line per element.
    SpectrumMatrix small;
    small.fs = 48000.0;
    small.n_fft = 16;
    for (std::size_t k = 0; k <= 8; ++k) {
        small.freqs.push_back(static_cast<double>(k) * 48000.0 / 16.0);
        Matrix m(2, 2);
        m(0, 0) = Complex{static_cast<double>(k), 0.0};
        small.mats.push_back(m);
    }
    const auto spec_path = (dir / "spectrum.csv").string();
    write_spectrum_csv(spec_path, small);
    std::ifstream sin(spec_path);
    std::getline(sin, header);
    CHECK(header == "bin,freq_hz,row,col,re,im");

    const auto rir_path = (dir / "rir.csv").string();
    write_rir_csv(rir_path, small);
    std::ifstream rin(rir_path);
    std::getline(rin, header);
    CHECK(header == "sample,time_s,row,col,value");
    rows = 0;
    while (std::getline(rin, line))
        if (!line.empty()) ++rows;
    CHECK(rows == 16 * 4);
}
