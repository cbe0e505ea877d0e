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
#include <filesystem>
#include <string>
#include <vector>

#include "aeb/scenarios.hpp"

namespace aeb {

struct SweepConfig {
  std::vector<double> kp{0.4, 0.6, 0.8};
  /// The sweep starts farther out than the single braking run so that every
  /// k_p value reaches its braking onset from cruise.
  double initial_ped_distance = 40.0;
};

struct AnalyzeConfig {
  PdGains gains = kDefaultLongitudinalGains;
  double mass = 1725.0;
  double ramp_slope = 1.0;
};

/// Everything a CLI invocation can configure. Defaults reproduce the
/// reference experiment set.
struct RunConfig {
  std::uint64_t seed = 1;
  ScenarioConfig brake;
  SweepConfig sweep;
  LateralScenarioConfig lateral;
  CharacterizationConfig characterize;
  AnalyzeConfig analyze;

  /// Pushes the shared seed and noise model into the sub-configs.
  void propagate_shared();
};

RunConfig default_run_config();

/// Overlays a YAML document onto `config`. Unknown keys and type mismatches
/// raise ConfigError carrying the 1-based line number.
void apply_config_text(RunConfig& config, const std::string& yaml_text);
void apply_config_file(RunConfig& config, const std::filesystem::path& path);

/// Fully resolved snapshot; feeding it back through apply_config_text
/// reproduces `config`.
std::string to_yaml(const RunConfig& config);

}  // namespace aeb
