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

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "aeb/analysis.hpp"
#include "aeb/scenarios.hpp"

namespace aeb {

/// Batch kernels run independent scenarios. `serial` is the reference path
/// the parallel (OpenMP) path is tested against; both produce identical
/// results in the same order.
enum class Execution { serial, parallel };

std::vector<TrajectoryLog> run_braking_batch(std::span<const ScenarioConfig> configs,
                                             Execution exec = Execution::parallel);

/// One run per seed with noise enabled, everything else from `base`.
std::vector<TrajectoryLog> run_seed_sweep(const ScenarioConfig& base,
                                          std::span<const std::uint64_t> seeds,
                                          Execution exec = Execution::parallel);

/// One noise-free run per k_p, labeled "kp=<value>". Empty input, empty output.
std::vector<TrajectoryLog> run_kp_sweep(const ScenarioConfig& base, std::span<const double> kp_values,
                                        Execution exec = Execution::parallel);

std::vector<LateralLog> run_lateral_batch(std::span<const LateralScenarioConfig> configs,
                                          Execution exec = Execution::parallel);

struct MonteCarloSummary {
  std::size_t runs = 0;
  std::size_t converged = 0;
  std::size_t stopped_short = 0;  ///< final_gap > 0
  double median_final_gap = 0.0;
  double min_final_gap = 0.0;
  double max_final_gap = 0.0;
};

MonteCarloSummary summarize_monte_carlo(std::span<const TrajectoryLog> logs);

/// Random polynomials with a2 != 0 and coefficients of mixed sign, including
/// exact zeros in a1 / a0 now and then.
std::vector<SecondOrderPolynomial> random_second_order_polynomials(std::size_t count,
                                                                   std::uint64_t seed);

/// Number of polynomials where the Routh-Hurwitz verdict disagrees with
/// max Re(pole) < 0.
std::size_t count_stability_disagreements(std::span<const SecondOrderPolynomial> polys,
                                          Execution exec = Execution::parallel);

}  // namespace aeb
