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

#include "aeb/controllers.hpp"

#include <algorithm>
#include <cmath>

#include "aeb/errors.hpp"

namespace aeb {

namespace {

void require_finite(double value, const char* what) {
  if (!std::isfinite(value)) throw InvalidInput(std::string(what) + " must be finite");
}

}  // namespace

void PdGains::validate() const {
  if (!(k_p > 0.0) || !(k_d >= 0.0) || !(k_inner > 0.0) || !std::isfinite(k_p) ||
      !std::isfinite(k_d) || !std::isfinite(k_inner)) {
    throw InvalidParameter("gains require k_p > 0, k_d >= 0, k_inner > 0");
  }
}

void LongitudinalConfig::validate() const {
  gains.validate();
  if (!(safe_offset > 0.0)) throw InvalidParameter("safe_offset must be positive");
  if (!(f_brake_max > 0.0)) throw InvalidParameter("f_brake_max must be positive");
  if (!(m > 0.0)) throw InvalidParameter("mass must be positive");
}

double reference_velocity(double e1, double e1_dot, const PdGains& gains) {
  require_finite(e1, "e1");
  require_finite(e1_dot, "e1_dot");
  return std::max(0.0, gains.k_p * e1 + gains.k_d * e1_dot);
}

double braking_force(double e2, double k_inner) {
  require_finite(e2, "e2");
  return k_inner * e2;
}

double force_to_brake_command(double u, double f_brake_max) {
  if (!(f_brake_max > 0.0)) throw InvalidParameter("f_brake_max must be positive");
  require_finite(u, "u");
  return std::clamp(-u / f_brake_max, 0.0, 1.0);
}

ControllerStepRecord longitudinal_step(double measured_ped_distance, double v,
                                       const LongitudinalConfig& config, double x) {
  require_finite(measured_ped_distance, "measured pedestrian distance");
  require_finite(v, "v");
  if (v < 0.0) throw InvalidInput("speed must be non-negative");

  ControllerStepRecord rec;
  // Behind the pedestrian plane: command a full stop toward the stop point.
  rec.e1 = measured_ped_distance < 0.0 ? -config.safe_offset
                                       : measured_ped_distance - config.safe_offset;
  rec.r = x + rec.e1;
  rec.r_v = reference_velocity(rec.e1, -v, config.gains);
  rec.e2 = rec.r_v - v;
  rec.u = braking_force(rec.e2, config.gains.k_inner);
  rec.brake_cmd = force_to_brake_command(rec.u, config.f_brake_max);
  return rec;
}

LateralStepRecord lateral_step(double lateral_offset_error, double psi_dot, const PdGains& gains,
                               double prev_error, double dt, double steering_limit) {
  require_finite(lateral_offset_error, "lateral offset error");
  require_finite(psi_dot, "psi_dot");
  require_finite(prev_error, "previous error");
  if (!(dt > 0.0)) throw InvalidInput("dt must be positive");
  LateralStepRecord rec;
  rec.r_psidot =
      gains.k_p * lateral_offset_error + gains.k_d * (lateral_offset_error - prev_error) / dt;
  rec.delta_f =
      std::clamp(gains.k_inner * (rec.r_psidot - psi_dot), -steering_limit, steering_limit);
  return rec;
}

}  // namespace aeb
