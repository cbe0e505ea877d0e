// Copyright 2026 The aebsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Serial reference vs. OpenMP batch kernels. Both paths produce identical
// results (see test_batch.cpp); this only measures throughput.

#include <cstdint>
#include <numeric>
#include <vector>

#include <benchmark/benchmark.h>

#include "aeb/batch.hpp"

namespace {

aeb::Execution mode(const benchmark::State& state) {
  return state.range(0) == 0 ? aeb::Execution::serial : aeb::Execution::parallel;
}

void BM_SeedSweep(benchmark::State& state) {
  std::vector<std::uint64_t> seeds(static_cast<std::size_t>(state.range(1)));
  std::iota(seeds.begin(), seeds.end(), 1);
  const aeb::ScenarioConfig base;
  for (auto _ : state) {
    auto logs = aeb::run_seed_sweep(base, seeds, mode(state));
    benchmark::DoNotOptimize(logs);
  }
  state.SetItemsProcessed(state.iterations() * state.range(1));
}
BENCHMARK(BM_SeedSweep)
    ->ArgNames({"parallel", "runs"})
    ->Args({0, 100})
    ->Args({1, 100})
    ->Unit(benchmark::kMillisecond);

void BM_KpSweep(benchmark::State& state) {
  std::vector<double> kps;
  for (int i = 0; i < state.range(1); ++i) kps.push_back(0.3 + 0.8 * i / state.range(1));
  aeb::ScenarioConfig base;
  base.initial_ped_distance = 40.0;
  for (auto _ : state) {
    auto logs = aeb::run_kp_sweep(base, kps, mode(state));
    benchmark::DoNotOptimize(logs);
  }
  state.SetItemsProcessed(state.iterations() * state.range(1));
}
BENCHMARK(BM_KpSweep)
    ->ArgNames({"parallel", "gains"})
    ->Args({0, 32})
    ->Args({1, 32})
    ->Unit(benchmark::kMillisecond);

void BM_StabilityDisagreements(benchmark::State& state) {
  const auto polys =
      aeb::random_second_order_polynomials(static_cast<std::size_t>(state.range(1)), 7);
  for (auto _ : state) {
    benchmark::DoNotOptimize(aeb::count_stability_disagreements(polys, mode(state)));
  }
  state.SetItemsProcessed(state.iterations() * state.range(1));
}
BENCHMARK(BM_StabilityDisagreements)
    ->ArgNames({"parallel", "polys"})
    ->Args({0, 100000})
    ->Args({1, 100000})
    ->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
