#include <benchmark/benchmark.h>

#include "esampling/presets.hpp"
#include "esampling/psd.hpp"
#include "esampling/sampling.hpp"
#include "esampling/sim.hpp"
#include "esampling/tradeoff.hpp"

namespace {

using namespace esampling;

constexpr double kFm = 19.8e6;

void BM_NmseFlat(benchmark::State& state) {
  const auto model = make_flat_psd(0.032, kFm);
  const double f_s = 1.3 * kFm;
  for (auto _ : state) {
    benchmark::DoNotOptimize(nmse(model, f_s));
  }
}
BENCHMARK(BM_NmseFlat);

void BM_NmseUnimodal(benchmark::State& state) {
  const auto model = make_unimodal_psd(0.032, kFm, kFm / 3.0);
  const double f_s = 1.3 * kFm;
  for (auto _ : state) {
    benchmark::DoNotOptimize(nmse(model, f_s));
  }
}
BENCHMARK(BM_NmseUnimodal);

void BM_AliasedSum(benchmark::State& state) {
  const auto model = make_multimodal_psd(0.032, kFm, kFm / 6.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(aliased_sum(model, 0.3 * kFm, 0.9 * kFm));
  }
}
BENCHMARK(BM_AliasedSum);

void BM_SarConvert(benchmark::State& state) {
  auto circuit = paper_example_preset().circuit;
  circuit.n = static_cast<int>(state.range(0));
  double v = 0.0;
  for (auto _ : state) {
    v += 0.8 / 1024.0;
    if (v >= 0.8) v = 0.0;
    benchmark::DoNotOptimize(sar_convert(v, circuit));
  }
}
BENCHMARK(BM_SarConvert)->Arg(8)->Arg(12)->Arg(16);

void BM_MaxRatioUnderFidelity(benchmark::State& state) {
  const auto p = paper_example_preset();
  const auto model = make_unimodal_psd(0.032, kFm, kFm / 3.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        max_ratio_under_fidelity(model, p.circuit, p.harvester, 0.05));
  }
}
BENCHMARK(BM_MaxRatioUnderFidelity);

void BM_RunSimulation(benchmark::State& state) {
  const auto p = paper_example_preset();
  SimConfig cfg;
  cfg.circuit = p.circuit;
  cfg.harvester = p.harvester;
  cfg.plan = TimingPlan::from_rate(p.circuit.t_aq, 40e6);
  cfg.input = SinusoidInput{19.8046875e6, 0.4, 0.4};
  cfg.num_samples = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_simulation(cfg));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_RunSimulation)->Arg(1024)->Arg(4096);

}  // namespace

BENCHMARK_MAIN();
