// Serial reference vs. OpenMP kernels: multi-start overlap maximization and
// the Monte Carlo polarizer average.

#include "symfam/sampler.hpp"
#include "symfam/witness.hpp"

#include <benchmark/benchmark.h>

using namespace symfam;

namespace {

const auto kFamily = DegeneracyConfiguration::parse("2,1,1");

void BM_MaxOverlapSerial(benchmark::State& state) {
  OptimizerConfig cfg;
  cfg.n_starts = int(state.range(0));
  const auto psi = tetrahedron_state();
  for (auto _ : state) benchmark::DoNotOptimize(max_overlap_serial(psi, kFamily, cfg).alpha);
}

void BM_MaxOverlapParallel(benchmark::State& state) {
  OptimizerConfig cfg;
  cfg.n_starts = int(state.range(0));
  const auto psi = tetrahedron_state();
  for (auto _ : state) benchmark::DoNotOptimize(max_overlap(psi, kFamily, cfg).alpha);
}

void BM_PolarizerSerial(benchmark::State& state) {
  const auto fam = DegeneracyConfiguration::parse("4");
  for (auto _ : state)
    benchmark::DoNotOptimize(polarizer_mixture_serial(fam, UniformSphere{}, int(state.range(0)), 0).rho.entries()(0, 0));
}

void BM_PolarizerParallel(benchmark::State& state) {
  const auto fam = DegeneracyConfiguration::parse("4");
  for (auto _ : state)
    benchmark::DoNotOptimize(polarizer_mixture(fam, UniformSphere{}, int(state.range(0)), 0).rho.entries()(0, 0));
}

}  // namespace

BENCHMARK(BM_MaxOverlapSerial)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MaxOverlapParallel)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PolarizerSerial)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PolarizerParallel)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
