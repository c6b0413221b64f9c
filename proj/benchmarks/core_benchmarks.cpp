#include "polaromech/couplings.hpp"
#include "polaromech/dynamics.hpp"
#include "polaromech/fluctuations.hpp"
#include "polaromech/numerics.hpp"

#include <benchmark/benchmark.h>

using namespace pm;

namespace {

FluctuationConfig cooling_point() {
    FluctuationConfig f;
    f.total_decay = 1;
    f.mechanical_frequency = 3;
    f.mechanical_decay = 1e-4;
    f.coupling = 0.002;
    f.kerr = -0.03;
    f.population = 50;
    f.detuning = -3;
    return f;
}

void exciton_solve(benchmark::State& state) {
    auto table = MaterialTable::builtin();
    QWSpec qw;
    qw.host = table.lookup("GaAs");
    qw.alloy = table.alloy();
    for (auto _ : state) benchmark::DoNotOptimize(self_consistent_exciton(qw));
}
BENCHMARK(exciton_solve)->Unit(benchmark::kMillisecond);

void pillar_mode_and_coupling(benchmark::State& state) {
    auto table = MaterialTable::builtin();
    auto gaas = table.lookup("GaAs");
    auto geometry = make_pillar_geometry(table, 1.3e-6, {-39e-9, -15e-9, 15e-9, 39e-9});
    for (auto _ : state) benchmark::DoNotOptimize(gxm_pillar(pillar_mech_mode(geometry), gaas));
}
BENCHMARK(pillar_mode_and_coupling)->Unit(benchmark::kMicrosecond);

void disk_breathing_mode(benchmark::State& state) {
    PlanarGeometry disk;
    disk.material = MaterialTable::builtin().lookup("GaAs");
    for (auto _ : state) benchmark::DoNotOptimize(rbm_disk(disk, 3));
}
BENCHMARK(disk_breathing_mode)->Unit(benchmark::kMicrosecond);

void steady_state_classification(benchmark::State& state) {
    DriveConfig c;
    c.total_decay = c.radiative_decay = 1;
    c.mechanical_frequency = 3;
    c.mechanical_decay = 1e-4;
    c.coupling = 0.002;
    c.kerr = 0.03;
    c.detuning = 2;
    c.input_rate = 40;
    for (auto _ : state) benchmark::DoNotOptimize(classify_point(c));
}
BENCHMARK(steady_state_classification)->Unit(benchmark::kMicrosecond);

void displacement_spectrum(benchmark::State& state) {
    auto cfg = cooling_point();
    auto grid = num::linspace(2, 4, static_cast<std::size_t>(state.range(0)));
    auto frame = squeeze_frame(cfg);
    for (auto _ : state) benchmark::DoNotOptimize(displacement_psd(frame, cfg, grid));
}
BENCHMARK(displacement_spectrum)->Arg(161)->Arg(1601)->Unit(benchmark::kMicrosecond);

void occupation(benchmark::State& state) {
    const auto method = static_cast<OccupationMethod>(state.range(0));
    auto cfg = cooling_point();
    for (auto _ : state) benchmark::DoNotOptimize(phonon_occupation(cfg, method));
    state.SetLabel(std::string(to_string(method)));
}
BENCHMARK(occupation)
    ->Arg(static_cast<int>(OccupationMethod::residues))
    ->Arg(static_cast<int>(OccupationMethod::quadrature))
    ->Unit(benchmark::kMicrosecond);

}

BENCHMARK_MAIN();
