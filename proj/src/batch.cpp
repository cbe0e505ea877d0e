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

#include "aeb/batch.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <random>

#include <fmt/format.h>

#include "aeb/errors.hpp"

namespace aeb {

namespace {

// Each iteration writes only its own slot, so the parallel loop needs no
// synchronization and results are order-identical to the serial loop.
template <class Out, class Fn>
std::vector<Out> map_runs(std::size_t n, Execution exec, Fn&& fn) {
  std::vector<Out> out(n);
  const auto count = static_cast<std::ptrdiff_t>(n);
  if (exec == Execution::serial) {
    for (std::ptrdiff_t i = 0; i < count; ++i) out[i] = fn(static_cast<std::size_t>(i));
    return out;
  }
  // Exceptions must not escape an OpenMP region; capture the first one.
  std::exception_ptr error;
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    try {
      out[i] = fn(static_cast<std::size_t>(i));
    } catch (...) {
#pragma omp critical(aeb_batch_error)
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
  return out;
}

bool poles_in_left_half_plane(const SecondOrderPolynomial& p) {
  const PoleSummary s = closed_loop_poles(p);
  return std::max(s.poles[0].real(), s.poles[1].real()) < 0.0;
}

}  // namespace

std::vector<TrajectoryLog> run_braking_batch(std::span<const ScenarioConfig> configs,
                                             Execution exec) {
  return map_runs<TrajectoryLog>(configs.size(), exec,
                                 [&](std::size_t i) { return run_braking_scenario(configs[i]); });
}

std::vector<TrajectoryLog> run_seed_sweep(const ScenarioConfig& base,
                                          std::span<const std::uint64_t> seeds, Execution exec) {
  std::vector<ScenarioConfig> configs(seeds.size(), base);
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    configs[i].seed = seeds[i];
    configs[i].noise_enabled = true;
    configs[i].label = fmt::format("{}-seed{}", base.label, seeds[i]);
  }
  return run_braking_batch(configs, exec);
}

std::vector<TrajectoryLog> run_kp_sweep(const ScenarioConfig& base, std::span<const double> kp_values,
                                        Execution exec) {
  std::vector<ScenarioConfig> configs(kp_values.size(), base);
  for (std::size_t i = 0; i < kp_values.size(); ++i) {
    if (!(kp_values[i] > 0.0)) throw ConfigError("k_p values must be positive");
    configs[i].gains.k_p = kp_values[i];
    configs[i].noise_enabled = false;
    configs[i].label = fmt::format("kp={:g}", kp_values[i]);
  }
  return run_braking_batch(configs, exec);
}

std::vector<LateralLog> run_lateral_batch(std::span<const LateralScenarioConfig> configs,
                                          Execution exec) {
  return map_runs<LateralLog>(configs.size(), exec,
                              [&](std::size_t i) { return run_lateral_scenario(configs[i]); });
}

MonteCarloSummary summarize_monte_carlo(std::span<const TrajectoryLog> logs) {
  MonteCarloSummary s;
  s.runs = logs.size();
  if (logs.empty()) return s;
  std::vector<double> gaps;
  gaps.reserve(logs.size());
  for (const TrajectoryLog& log : logs) {
    gaps.push_back(log.summary.final_gap);
    if (log.summary.converged) ++s.converged;
    if (log.summary.final_gap > 0.0) ++s.stopped_short;
  }
  std::sort(gaps.begin(), gaps.end());
  const std::size_t mid = gaps.size() / 2;
  s.median_final_gap = gaps.size() % 2 ? gaps[mid] : 0.5 * (gaps[mid - 1] + gaps[mid]);
  s.min_final_gap = gaps.front();
  s.max_final_gap = gaps.back();
  return s;
}

std::vector<SecondOrderPolynomial> random_second_order_polynomials(std::size_t count,
                                                                   std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coeff(-10.0, 10.0);
  std::uniform_int_distribution<int> pick(0, 9);
  std::vector<SecondOrderPolynomial> out;
  out.reserve(count);
  while (out.size() < count) {
    SecondOrderPolynomial p{coeff(rng), coeff(rng), coeff(rng)};
    if (p.a2 == 0.0) continue;
    if (pick(rng) == 0) p.a1 = 0.0;
    if (pick(rng) == 0) p.a0 = 0.0;
    out.push_back(p);
  }
  return out;
}

std::size_t count_stability_disagreements(std::span<const SecondOrderPolynomial> polys,
                                          Execution exec) {
  const auto count = static_cast<std::ptrdiff_t>(polys.size());
  std::size_t disagreements = 0;
  if (exec == Execution::serial) {
    for (std::ptrdiff_t i = 0; i < count; ++i) {
      if (routh_hurwitz_stable(polys[i]) != poles_in_left_half_plane(polys[i])) ++disagreements;
    }
    return disagreements;
  }
#pragma omp parallel for reduction(+ : disagreements)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    if (routh_hurwitz_stable(polys[i]) != poles_in_left_half_plane(polys[i])) ++disagreements;
  }
  return disagreements;
}

}  // namespace aeb
