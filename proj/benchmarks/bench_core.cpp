#include <benchmark/benchmark.h>

#include <numbers>

#include "mimosa/array_model.hpp"
#include "mimosa/doa_music.hpp"
#include "mimosa/fft.hpp"
#include "mimosa/room_model.hpp"
#include "mimosa/sh_math.hpp"
#include "mimosa/smoothing.hpp"
#include "mimosa/transfer_synthesis.hpp"

using namespace mimosa;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

MicrophoneArrayConfig mic_cfg() {
    MicrophoneArrayConfig cfg;
    cfg.radius_m = 0.07;
    cfg.order = 2;
    return cfg;
}

LoudspeakerArrayConfig ls_cfg() {
    LoudspeakerArrayConfig cfg;
    cfg.radius_m = 0.1;
    cfg.order = 3;
    cfg.aperture_rad = cap_aperture_from_diameter(0.0508, 0.1);
    return cfg;
}

std::vector<Reflection> scene_reflections() {
    std::vector<Reflection> out;
    for (const auto& r : enumerate_images(SceneConfig{}, 0.029))
        if (r.delay_s >= 0.007) out.push_back(r);
    return out;
}

}  // namespace

static void BM_SteeringVector(benchmark::State& state) {
    const SphericalAngle dir(1.1, 2.3);
    for (auto _ : state) benchmark::DoNotOptimize(steering_vector(dir, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_SteeringVector)->Arg(2)->Arg(3)->Arg(6);

static void BM_AssembleTransfer(benchmark::State& state) {
    const auto refl = scene_reflections();
    for (auto _ : state)
        benchmark::DoNotOptimize(assemble_plane_wave_transfer(kTwoPi * 1600.0, refl, mic_cfg(), ls_cfg()));
}
BENCHMARK(BM_AssembleTransfer);

static void BM_ModalSmooth(benchmark::State& state) {
    const auto refl = scene_reflections();
    const Matrix a = assemble_plane_wave_transfer(kTwoPi * 1600.0, refl, mic_cfg(), ls_cfg());
    for (auto _ : state) benchmark::DoNotOptimize(modal_smooth(a, 3));
}
BENCHMARK(BM_ModalSmooth);

static void BM_HermitianEig(benchmark::State& state) {
    const auto refl = scene_reflections();
    const Matrix a = assemble_plane_wave_transfer(kTwoPi * 1600.0, refl, mic_cfg(), ls_cfg());
    const CrossSpectrum s = modal_smooth(a, 3);
    for (auto _ : state) benchmark::DoNotOptimize(hermitian_eig(s));
}
BENCHMARK(BM_HermitianEig);

static void BM_Fft8192(benchmark::State& state) {
    CVector data(8192);
    for (std::size_t i = 0; i < data.size(); ++i) data[i] = Complex{std::sin(0.01 * i), 0.0};
    for (auto _ : state) {
        CVector work = data;
        fft_inplace(work, -1);
        benchmark::DoNotOptimize(work);
    }
}
BENCHMARK(BM_Fft8192);

static void BM_MusicSpectrumCoarse(benchmark::State& state) {
    const auto refl = scene_reflections();
    const Matrix a = assemble_plane_wave_transfer(kTwoPi * 1600.0, refl, mic_cfg(), ls_cfg());
    const Matrix un = noise_subspace(hermitian_eig(modal_smooth(a, 3)), 6);
    const SphereGrid grid = make_grid(5.0);
    for (auto _ : state) benchmark::DoNotOptimize(music_spectrum(un, grid, 2));
}
BENCHMARK(BM_MusicSpectrumCoarse);

static void BM_EnumerateImages(benchmark::State& state) {
    const SceneConfig scene{};
    for (auto _ : state) benchmark::DoNotOptimize(enumerate_images(scene, 0.08));
}
BENCHMARK(BM_EnumerateImages);

static void BM_TimeWindow(benchmark::State& state) {
    const auto refl = scene_reflections();
    const SpectrumMatrix spec = synthesize_broadband(refl, mic_cfg(), ls_cfg(), 48000.0, 2048);
    WindowSpec win;
    win.start_s = 0.007;
    win.length_samples = 1056;
    for (auto _ : state) benchmark::DoNotOptimize(apply_time_window(spec, win));
}
BENCHMARK(BM_TimeWindow);

BENCHMARK_MAIN();
