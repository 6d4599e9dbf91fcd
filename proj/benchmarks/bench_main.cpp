#include <benchmark/benchmark.h>

#include "rionset/asymptotics.hpp"
#include "rionset/ensemble.hpp"
#include "rionset/onedim.hpp"
#include "rionset/rng.hpp"
#include "rionset/sde.hpp"

namespace {

using namespace rionset;

const ModelParams kDefaults{};
const State kX0{-0.01, 0.01, 1e-4};

void BM_Philox(benchmark::State& state) {
  GaussianStream g(1, 0);
  for (auto _ : state) benchmark::DoNotOptimize(g.next_triple());
}
BENCHMARK(BM_Philox);

void BM_Step(benchmark::State& state) {
  const auto kind = static_cast<StepperKind>(state.range(0));
  State x = kX0;
  const State inc{1e-5, 1e-5, 1e-5};
  for (auto _ : state) {
    benchmark::DoNotOptimize(x = step(MsdDrift{kDefaults}, x, 1e-3, inc, kind));
    x = kX0;
  }
}
BENCHMARK(BM_Step)->Arg(0)->Arg(1);

void BM_RunToHit(benchmark::State& state) {
  std::uint64_t stream = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        run_to_hit(kDefaults, {-0.01, 0.02, 1e-4}, 0.1, 1e-3, 50.0, {1e-2, 1, stream++}));
  }
}
BENCHMARK(BM_RunToHit)->Unit(benchmark::kMicrosecond);

void BM_Ensemble(benchmark::State& state) {
  EnsembleConfig cfg;
  cfg.n_realizations = static_cast<std::size_t>(state.range(0));
  cfg.scenario.x0.v = 0.02;
  cfg.epsilon = 1e-2;
  for (auto _ : state) benchmark::DoNotOptimize(run_ensemble(cfg));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Ensemble)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_OnsetVariance(benchmark::State& state) {
  Scenario sc;
  sc.x0.v = 0.02;
  for (auto _ : state) benchmark::DoNotOptimize(onset_variance(sc, 1e-3));
}
BENCHMARK(BM_OnsetVariance)->Unit(benchmark::kMillisecond);

void BM_HittingKernel(benchmark::State& state) {
  const DriftFn1D d = make_drift("linear");
  const double eps = 1.0 / static_cast<double>(state.range(0));
  for (auto _ : state) {
    const HittingKernel k(d, eps, 0.1);
    benchmark::DoNotOptimize(k.cond_exp_hit_time(0.01));
  }
}
BENCHMARK(BM_HittingKernel)->Arg(20)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_HitProbNoPrimitive(benchmark::State& state) {
  DriftFn1D d = make_drift("logistic");
  d.primitive = nullptr;
  for (auto _ : state) benchmark::DoNotOptimize(hit_prob_1d(d, 0.01, 0.1, 0.01));
}
BENCHMARK(BM_HitProbNoPrimitive)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
