// Copyright 2026 The logsob Authors.
// SPDX-License-Identifier: Apache-2.0

#include <benchmark/benchmark.h>

#include <vector>

#include "logsob/bounds.hpp"
#include "logsob/curvature.hpp"
#include "logsob/rng.hpp"
#include "logsob/sampling.hpp"
#include "logsob/sde.hpp"

namespace {

using namespace logsob;

void BM_PhiloxBlock(benchmark::State& state) {
  Philox::Block ctr{0, 0, 0, 0};
  for (auto _ : state) {
    ++ctr[0];
    benchmark::DoNotOptimize(Philox::generate(ctr, {1, 2}));
  }
}
BENCHMARK(BM_PhiloxBlock);

void BM_Normals(benchmark::State& state) {
  const NormalSource src(7);
  std::vector<double> z(static_cast<std::size_t>(state.range(0)));
  std::uint64_t k = 0;
  for (auto _ : state) {
    src.normals(0, k++, z);
    benchmark::DoNotOptimize(z.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Normals)->Arg(1)->Arg(8)->Arg(64);

void BM_SimulatePath(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const Potential p = Potential::subbotin(d, 4.0);
  const Perturbation a = Perturbation::arctan(0.4);
  SdeConfig cfg;
  cfg.dt = 1e-3;
  const StepPlan plan = plan_steps(cfg);
  const Point x0(static_cast<std::size_t>(d), 0.0);
  std::size_t id = 0;
  for (auto _ : state) benchmark::DoNotOptimize(simulate_path(p, a, Variant::perturbed, x0, plan, 0, id++));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(plan.steps));
}
BENCHMARK(BM_SimulatePath)->Arg(1)->Arg(4)->Arg(16);

void BM_KappaRadialGrid(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const Potential p = Potential::double_well(d, 0.25);
  const Perturbation a = Perturbation::arctan(2.0 / (d + 1));
  SearchConfig cfg;
  cfg.allow_certificate = false;
  for (auto _ : state) benchmark::DoNotOptimize(kappa(p, a, cfg));
}
BENCHMARK(BM_KappaRadialGrid)->Arg(2)->Arg(32);

void BM_Certificate(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(certify_double_well(0.5, 3, 0.25));
}
BENCHMARK(BM_Certificate);

void BM_OptimizeEpsilon(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(optimize_epsilon(CertifiedFamily::quadric, 8));
}
BENCHMARK(BM_OptimizeEpsilon);

void BM_RadialSampler(benchmark::State& state) {
  const Potential p = Potential::subbotin(2, 4.0);
  for (auto _ : state) benchmark::DoNotOptimize(sample_measure(p, 10000, SampleMethod::radial_exact, 1));
}
BENCHMARK(BM_RadialSampler);

}  // namespace

BENCHMARK_MAIN();
