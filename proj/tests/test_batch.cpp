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

#include <doctest.h>

#include <numeric>
#include <vector>

#include "aeb/batch.hpp"

using namespace aeb;

namespace {

std::vector<std::uint64_t> seeds(std::size_t n) {
  std::vector<std::uint64_t> s(n);
  std::iota(s.begin(), s.end(), 1);
  return s;
}

void check_identical(const std::vector<TrajectoryLog>& a, const std::vector<TrajectoryLog>& b) {
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].label == b[i].label);
    REQUIRE(a[i].rows.size() == b[i].rows.size());
    for (std::size_t k = 0; k < a[i].rows.size(); ++k) {
      CHECK(a[i].rows[k].x == b[i].rows[k].x);
      CHECK(a[i].rows[k].v == b[i].rows[k].v);
      CHECK(a[i].rows[k].ped_meas == b[i].rows[k].ped_meas);
    }
    CHECK(a[i].summary.final_gap == b[i].summary.final_gap);
  }
}

}  // namespace

TEST_CASE("parallel seed sweep matches the serial reference") {
  const auto s = seeds(16);
  check_identical(run_seed_sweep(ScenarioConfig{}, s, Execution::serial),
                  run_seed_sweep(ScenarioConfig{}, s, Execution::parallel));
}

TEST_CASE("parallel k_p sweep matches the serial reference") {
  const std::vector<double> kps{0.3, 0.5, 0.7, 0.9, 1.1};
  ScenarioConfig base;
  base.initial_ped_distance = 40.0;
  check_identical(run_kp_sweep(base, kps, Execution::serial),
                  run_kp_sweep(base, kps, Execution::parallel));
}

TEST_CASE("parallel lateral batch matches the serial reference") {
  std::vector<LateralScenarioConfig> cfgs(4);
  for (std::size_t i = 0; i < cfgs.size(); ++i) cfgs[i].params.v_x = 5.0 + 3.0 * i;
  const auto a = run_lateral_batch(cfgs, Execution::serial);
  const auto b = run_lateral_batch(cfgs, Execution::parallel);
  for (std::size_t i = 0; i < cfgs.size(); ++i) {
    REQUIRE(a[i].rows.size() == b[i].rows.size());
    CHECK(a[i].rows.back().y == b[i].rows.back().y);
  }
}

TEST_CASE("errors inside a parallel batch propagate") {
  std::vector<ScenarioConfig> cfgs(6);
  cfgs[3].dt = 1.0;
  CHECK_THROWS_AS(run_braking_batch(cfgs, Execution::parallel), ConfigError);
}

TEST_CASE("noisy Monte Carlo stops short of the pedestrian") {
  const auto s = seeds(100);
  const auto logs = run_seed_sweep(ScenarioConfig{}, s);
  const auto mc = summarize_monte_carlo(logs);
  CHECK(mc.runs == 100);
  CHECK(mc.stopped_short == 100);
  CHECK(mc.converged == 100);
  CHECK(mc.median_final_gap >= 3.5);
  CHECK(mc.median_final_gap <= 5.5);
}

TEST_CASE("Monte Carlo summary statistics") {
  std::vector<TrajectoryLog> logs(4);
  const double gaps[] = {3.0, -1.0, 5.0, 4.0};
  for (std::size_t i = 0; i < 4; ++i) logs[i].summary.final_gap = gaps[i];
  const auto mc = summarize_monte_carlo(logs);
  CHECK(mc.median_final_gap == 3.5);
  CHECK(mc.min_final_gap == -1.0);
  CHECK(mc.max_final_gap == 5.0);
  CHECK(mc.stopped_short == 3);
  CHECK(summarize_monte_carlo({}).runs == 0);
}

TEST_CASE("Routh-Hurwitz agrees with pole signs on random polynomials") {
  const auto polys = random_second_order_polynomials(5000, 77);
  std::size_t zeros = 0;
  std::size_t negative_lead = 0;
  for (const auto& p : polys) {
    zeros += (p.a1 == 0.0 || p.a0 == 0.0);
    negative_lead += p.a2 < 0.0;
  }
  CHECK(zeros > 0);
  CHECK(negative_lead > 0);
  CHECK(count_stability_disagreements(polys, Execution::serial) == 0);
  CHECK(count_stability_disagreements(polys, Execution::parallel) == 0);
}
