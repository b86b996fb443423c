#include <benchmark/benchmark.h>

#include "rspdc/analysis/schmidt.hpp"
#include "rspdc/analysis/temporal.hpp"
#include "rspdc/optics/generator.hpp"
#include "rspdc/optics/peaks.hpp"
#include "rspdc/optics/transfer_matrix.hpp"
#include "rspdc/spdc/amplitude.hpp"
#include "rspdc/units.hpp"

using namespace rspdc;

static void BM_Transmittance(benchmark::State& state) {
  const auto stack = optics::generate_random_stack({1.0, static_cast<std::size_t>(state.range(0)), 0.025, 1});
  const double w = omega_from_wavelength(1.0);
  for (auto _ : state) benchmark::DoNotOptimize(optics::transmittance(stack, w, 0.3));
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_Transmittance)->Arg(250)->Arg(500)->Arg(750);

static void BM_ScanPeaks(benchmark::State& state) {
  const auto stack = optics::generate_random_stack({1.0, 250, 0.025, 2});
  const double w = omega_from_wavelength(1.0);
  for (auto _ : state) benchmark::DoNotOptimize(optics::scan_peaks(stack, 0.95 * w, 1.05 * w, 0.0));
}
BENCHMARK(BM_ScanPeaks)->Unit(benchmark::kMillisecond);

namespace {

spdc::TwoPhotonAmplitude amplitude(std::size_t n) {
  const auto stack = optics::generate_random_stack({1.0, 250, 0.025, 2});
  const double w = omega_from_wavelength(1.0);
  const auto found = optics::scan_peaks(stack, 0.95 * w, 1.05 * w, 0.0);
  const auto& p = found.peaks.front();
  spdc::PumpConfig pump;
  pump.omega_p0 = 2.0 * p.omega_c;
  return spdc::two_photon_amplitude(stack, pump, {}, spdc::FrequencyGrid::square_around(p.omega_c, 8.0 * p.fwhm_omega, n));
}

}  // namespace

static void BM_Amplitude(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(amplitude(n));
}
BENCHMARK(BM_Amplitude)->Arg(64)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

static void BM_Schmidt(benchmark::State& state) {
  const auto tpa = amplitude(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(analysis::schmidt_decompose(tpa, false));
}
BENCHMARK(BM_Schmidt)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

static void BM_Temporal(benchmark::State& state) {
  const auto tpa = amplitude(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(analysis::temporal_amplitude(tpa));
}
BENCHMARK(BM_Temporal)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
