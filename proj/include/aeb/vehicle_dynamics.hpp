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

#include "aeb/integrator.hpp"

namespace aeb {

// ---------------------------------------------------------------------------
// Longitudinal plant: point mass driven by a braking force, optional
// quadratic aerodynamic drag.
// ---------------------------------------------------------------------------

struct LongitudinalState {
  double x = 0.0;  ///< position along the travel axis [m]
  double v = 0.0;  ///< forward speed [m/s]
};

struct LongitudinalParams {
  double m = 1725.0;  ///< vehicle mass [kg]
  bool drag_enabled = true;
  double rho = 1.225;  ///< air density [kg/m^3]
  double c_d = 0.3;
  double area = 2.2;  ///< frontal area [m^2]

  /// Throws InvalidParameter on m <= 0 or negative drag terms.
  void validate() const;
};

struct LongitudinalDerivative {
  double dx = 0.0;
  double dv = 0.0;
};

/// Signed drag force, opposing motion. Zero when drag is disabled.
double drag_force(double v, const LongitudinalParams& params);

/// dx/dt = v, dv/dt = (force + drag) / m. Negative force brakes.
LongitudinalDerivative longitudinal_derivative(const LongitudinalState& state, double force,
                                               const LongitudinalParams& params);

/// RK4 step under a constant applied force. The brake-only plant cannot
/// reverse: if the step would take v below zero the state is returned at the
/// zero crossing with v = 0 exactly.
LongitudinalState step_longitudinal(const LongitudinalState& state, double force,
                                    const LongitudinalParams& params, double dt);

// ---------------------------------------------------------------------------
// Lateral plant: linear single-track model for (v_y, yaw rate) plus planar
// kinematics for heading and lateral position.
// ---------------------------------------------------------------------------

struct LateralState {
  double v_y = 0.0;      ///< lateral velocity [m/s]
  double psi_dot = 0.0;  ///< yaw rate [rad/s]
  double psi = 0.0;      ///< heading [rad]
  double y = 0.0;        ///< lateral position [m]
};

struct LateralParams {
  double c_f = 80000.0;  ///< front axle cornering stiffness [N/rad]
  double c_r = 80000.0;  ///< rear axle cornering stiffness [N/rad]
  double l_f = 1.2;      ///< CoM to front axle [m]
  double l_r = 1.6;      ///< CoM to rear axle [m]
  double m = 1725.0;
  double i_z = 2500.0;  ///< yaw inertia [kg m^2]
  double v_x = 8.0;     ///< longitudinal speed [m/s]
  double m_z = 0.0;     ///< external yaw torque [N m]
  double steering_limit = 0.5;  ///< |delta_f| bound [rad]

  void validate() const;
};

/// 2x2 system matrix and the steering / yaw-torque input columns of the
/// linear (v_y, psi_dot) subsystem.
struct LateralLinearModel {
  std::array<std::array<double, 2>, 2> a{};
  std::array<double, 2> b_steer{};
  std::array<double, 2> b_torque{};
};

LateralLinearModel lateral_linear_model(const LateralParams& params);

struct LateralDerivative {
  double dv_y = 0.0;
  double dpsi_dot = 0.0;
  double dpsi = 0.0;
  double dy = 0.0;
};

LateralDerivative lateral_derivative(const LateralState& state, double delta_f,
                                     const LateralParams& params);

LateralState step_lateral(const LateralState& state, double delta_f, const LateralParams& params,
                          double dt);

}  // namespace aeb
