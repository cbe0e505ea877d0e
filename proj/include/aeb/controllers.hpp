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

namespace aeb {

/// Outer PD gains plus the inner-loop proportional gain of a cascaded loop.
/// Longitudinal: k_inner in N per (m/s). Lateral: rad of steering per (rad/s).
struct PdGains {
  double k_p = 0.8;
  double k_d = 0.1;
  double k_inner = 10000.0;

  void validate() const;
};

inline constexpr PdGains kDefaultLongitudinalGains{0.8, 0.1, 10000.0};
inline constexpr PdGains kDefaultLateralGains{0.15, 0.25, 0.6};

struct LongitudinalConfig {
  PdGains gains = kDefaultLongitudinalGains;
  double safe_offset = 5.0;    ///< stop point distance in front of the pedestrian [m]
  double f_brake_max = 8000.0; ///< force mapped to brake command 1.0 [N]
  double dt = 0.01;
  double m = 1725.0;

  void validate() const;
};

/// Every signal of the longitudinal block diagram for one control step.
struct ControllerStepRecord {
  double r = 0.0;    ///< stop position in the world frame [m]
  double e1 = 0.0;   ///< distance to the stop point [m]
  double r_v = 0.0;  ///< reference velocity [m/s]
  double e2 = 0.0;   ///< velocity error [m/s]
  double u = 0.0;    ///< commanded force, negative brakes [N]
  double brake_cmd = 0.0;
};

/// Outer loop: k_p * e1 + k_d * de1/dt, floored at zero (never reverse).
double reference_velocity(double e1, double e1_dot, const PdGains& gains);

/// Inner loop: k_inner * e2.
double braking_force(double e2, double k_inner);

/// clamp(-u / f_brake_max, 0, 1). Positive u would be throttle and maps to 0.
double force_to_brake_command(double u, double f_brake_max);

/// One step of the cascaded longitudinal controller. The distance derivative
/// is taken as -v (stationary pedestrian) instead of differentiating the
/// noisy range. `x` only shifts the logged stop position r into the world frame.
ControllerStepRecord longitudinal_step(double measured_ped_distance, double v,
                                       const LongitudinalConfig& config, double x = 0.0);

struct LateralStepRecord {
  double r_psidot = 0.0;  ///< reference yaw rate [rad/s]
  double delta_f = 0.0;   ///< saturated steering angle [rad]
};

/// Cascaded lateral controller: PD on lateral offset error produces a yaw-rate
/// reference, a proportional inner loop turns yaw-rate error into steering.
/// The caller threads `prev_error` between steps.
LateralStepRecord lateral_step(double lateral_offset_error, double psi_dot, const PdGains& gains,
                               double prev_error, double dt, double steering_limit = 0.5);

}  // namespace aeb
