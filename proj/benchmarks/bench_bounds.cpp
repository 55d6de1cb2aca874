// Microbenchmarks for the hot paths: matrix assembly, eigendecomposition,
// bound quadrature, realization generation and filtering.
#include <benchmark/benchmark.h>

#include <complex>
#include <vector>

#include "syncmmse/kl_transform.hpp"
#include "syncmmse/mmse.hpp"
#include "syncmmse/signal_models.hpp"
#include "syncmmse/sim/fresh_filter.hpp"
#include "syncmmse/sim/realization.hpp"

namespace {

using namespace syncmmse;

void BM_AssembleCyclicPsdMatrix(benchmark::State& state) {
  const SrrcPamModel signal(static_cast<int>(state.range(0)), 0.5);
  const CompositeModel composite(signal, 1.0);
  double sigma = 0.01;
  for (auto _ : state) {
    benchmark::DoNotOptimize(assemble_cyclic_psd_matrix(composite, sigma));
  }
}
BENCHMARK(BM_AssembleCyclicPsdMatrix)->Arg(2)->Arg(4)->Arg(8);

void BM_KlDecompose(benchmark::State& state) {
  const SrrcPamModel signal(static_cast<int>(state.range(0)), 0.5);
  const CompositeModel composite(signal, 1.0);
  const CyclicPsdMatrix matrix = assemble_cyclic_psd_matrix(composite, 0.01);
  for (auto _ : state) {
    benchmark::DoNotOptimize(kl_decompose(matrix));
  }
}
BENCHMARK(BM_KlDecompose)->Arg(2)->Arg(4)->Arg(8);

void BM_MmseNoncausal(benchmark::State& state) {
  const SrrcPamModel signal(4, 0.0);
  const AdditiveScenario sc(signal, 1.0);
  const FrequencyGrid grid(4, static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(mmse_noncausal(sc, grid));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_MmseNoncausal)->RangeMultiplier(4)->Range(64, 4096)->Complexity();

void BM_SyncGains(benchmark::State& state) {
  const SrrcPamModel signal(4, 0.5);
  const AdditiveScenario sc = AdditiveScenario::from_snr(signal, 1000.0);
  const FrequencyGrid grid(4, 1024);
  for (auto _ : state) {
    benchmark::DoNotOptimize(sync_gains(sc, grid));
  }
}
BENCHMARK(BM_SyncGains);

void BM_GenerateRealization(benchmark::State& state) {
  const SrrcPamModel signal(4, 0.0);
  const Pulse pulse = pulse_time_taps(4, 96);
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  std::uint64_t seed = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(generate_realization(signal, 1.0, n, seed++, &pulse));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_GenerateRealization)->RangeMultiplier(4)->Range(1 << 12, 1 << 18)->Complexity();

void BM_ApplyFresh(benchmark::State& state) {
  const SrrcPamModel signal(4, 0.0);
  const AdditiveScenario sc(signal, 1.0);
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  const FreshFilterBank bank = design_cwf(sc, n);
  const Realization r = generate_realization(signal, 1.0, n, 3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(apply_fresh(bank, r.x));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_ApplyFresh)->RangeMultiplier(4)->Range(1 << 12, 1 << 16)->Complexity();

}  // namespace

BENCHMARK_MAIN();
