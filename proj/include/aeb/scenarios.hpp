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
#include <optional>
#include <string>
#include <vector>

#include "aeb/controllers.hpp"
#include "aeb/sensing.hpp"
#include "aeb/vehicle_dynamics.hpp"

namespace aeb {

// ---------------------------------------------------------------------------
// Pedestrian braking
// ---------------------------------------------------------------------------

struct ScenarioConfig {
  std::string label = "brake";
  std::uint64_t seed = 1;
  double initial_speed = 8.13;
  double initial_ped_distance = 25.0;
  double safe_offset = 5.0;
  double dt = 0.01;
  double horizon = 60.0;
  /// Below this speed the vehicle is held at rest by the brakes [m/s].
  double stop_speed = 1e-3;
  PdGains gains = kDefaultLongitudinalGains;
  double f_brake_max = 8000.0;
  LongitudinalParams plant;
  bool noise_enabled = false;
  DetectionNoiseModel noise;  ///< seed field is ignored; `seed` above is used
  /// One detection every `detection_decimation` control steps.
  int detection_decimation = 1;
  /// Exponential smoothing of detections; 1 disables the filter.
  double smoothing_alpha = 1.0;

  void validate() const;
  LongitudinalConfig controller_config() const;
};

struct TrajectoryRow {
  double t = 0.0;
  double x = 0.0;
  double v = 0.0;
  double ped_true = 0.0;
  std::optional<double> ped_meas;
  /// Empty until the first detection arrives.
  std::optional<ControllerStepRecord> control;

  double brake_cmd() const { return control ? control->brake_cmd : 0.0; }
};

struct TrajectorySummary {
  double final_gap = 0.0;   ///< pedestrian distance at the last row [m]
  double peak_decel = 0.0;  ///< max row-to-row deceleration [m/s^2]
  double stop_time = 0.0;   ///< time of the last row [s]
  bool converged = false;   ///< stopped with brake released before the horizon
};

struct TrajectoryLog {
  std::string label;
  std::uint64_t seed = 0;
  double dt = 0.0;
  std::vector<TrajectoryRow> rows;
  TrajectorySummary summary;
};

/// Recomputes final_gap, peak_decel and stop_time from the rows.
TrajectorySummary summarize_rows(const std::vector<TrajectoryRow>& rows, double dt, bool converged);

/// Closed-loop braking toward a stationary pedestrian. Runs until the vehicle
/// is at rest with the brake released, or until the horizon (flagged as not
/// converged rather than thrown).
TrajectoryLog run_braking_scenario(const ScenarioConfig& config);

/// Distance from the pedestrian at which brake_cmd first turns positive for
/// noise-free inputs at constant speed v: offset + (1 + k_d) v / k_p.
double braking_onset_distance(double v, const PdGains& gains, double safe_offset);

// ---------------------------------------------------------------------------
// Lateral step response
// ---------------------------------------------------------------------------

struct ReferencePoint {
  double t = 0.0;
  double y_ref = 0.0;
};

struct LateralScenarioConfig {
  std::string label = "lateral";
  double initial_offset = 0.0;  ///< y at t = 0 [m]
  LateralParams params;
  PdGains gains = kDefaultLateralGains;
  double dt = 0.01;
  double horizon = 30.0;
  /// Piecewise-constant reference; each point holds from its time onward.
  std::vector<ReferencePoint> reference{{0.0, 1.0}};
  double divergence_limit = 100.0;
  double settle_band = 0.02;  ///< fraction of the last step

  void validate() const;
  double reference_at(double t) const;
};

struct LateralRow {
  double t = 0.0;
  double y_ref = 0.0;
  double y = 0.0;
  double psi = 0.0;
  double psi_dot = 0.0;
  double v_y = 0.0;
  double r_psidot = 0.0;
  double delta_f = 0.0;
};

struct LateralSummary {
  double final_y = 0.0;
  double final_ref = 0.0;
  double overshoot = 0.0;      ///< fraction of the last reference step
  double settling_time = 0.0;  ///< since the last step [s]; NaN if never settled
  bool diverged = false;
  bool converged = false;
};

struct LateralLog {
  std::string label;
  double dt = 0.0;
  std::vector<LateralRow> rows;
  LateralSummary summary;
};

LateralLog run_lateral_scenario(const LateralScenarioConfig& config);

// ---------------------------------------------------------------------------
// Detection range characterization
// ---------------------------------------------------------------------------

struct CharacterizationConfig {
  std::vector<double> ranges{5.0, 10.0, 15.0, 20.0, 25.0};
  double dwell = 5.0;      ///< seconds per range
  double rate_hz = 100.0;  ///< detection rate
  DetectionNoiseModel model;

  void validate() const;
};

struct CharacterizationSample {
  double range = 0.0;
  Measurement measurement;
};

struct RangeStatistics {
  double range = 0.0;
  std::size_t samples = 0;
  std::size_t detections = 0;  ///< samples that were not dropouts
  double mean = 0.0;
  double stddev = 0.0;  ///< sample standard deviation of detections
};

struct CharacterizationLog {
  std::vector<CharacterizationSample> samples;
  std::vector<RangeStatistics> per_range;
};

CharacterizationLog run_detection_characterization(const CharacterizationConfig& config);

}  // namespace aeb
