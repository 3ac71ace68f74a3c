// Serial reference vs OpenMP kernels for one synchronous update.
// Run with OMP_NUM_THREADS=k to vary the thread count.

#include <benchmark/benchmark.h>

#include <random>

#include "wmop/dynamics.hpp"
#include "wmop/generators.hpp"
#include "wmop/median.hpp"

namespace {

struct Instance {
  wmop::InfluenceNetwork net;
  wmop::PrejudiceConfig cfg;
  wmop::OpinionVector x;
};

Instance make(std::size_t n) {
  wmop::GeneratorParams p;
  p.kind = wmop::GeneratorKind::RandomRowStochastic;
  p.n = n;
  p.density = 0.3;
  std::mt19937_64 rng(n);
  std::vector<double> lambda(n), u(n), x(n);
  for (std::size_t i = 0; i < n; ++i) {
    lambda[i] = wmop::uniform01(rng);
    u[i] = wmop::uniform01(rng);
    x[i] = wmop::uniform01(rng);
  }
  return {wmop::generate(p, 7), wmop::PrejudiceConfig(lambda, u), x};
}

void BM_MedianMapSerial(benchmark::State& state) {
  const auto in = make(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(wmop::median_map_serial(in.x, in.net));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_MedianMapParallel(benchmark::State& state) {
  const auto in = make(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(wmop::median_map(in.x, in.net));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_StepFjSerial(benchmark::State& state) {
  const auto in = make(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(wmop::step_fj_serial(in.x, in.net, in.cfg));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_StepFjParallel(benchmark::State& state) {
  const auto in = make(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(wmop::step_fj(in.x, in.net, in.cfg));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK(BM_MedianMapSerial)->RangeMultiplier(4)->Range(64, 4096);
BENCHMARK(BM_MedianMapParallel)->RangeMultiplier(4)->Range(64, 4096);
BENCHMARK(BM_StepFjSerial)->RangeMultiplier(4)->Range(64, 4096);
BENCHMARK(BM_StepFjParallel)->RangeMultiplier(4)->Range(64, 4096);

BENCHMARK_MAIN();
