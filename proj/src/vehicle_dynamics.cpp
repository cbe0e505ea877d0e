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

#include "aeb/vehicle_dynamics.hpp"

#include <cmath>
#include <string>

namespace aeb {

void check_step_size(double dt) {
  if (!(dt > 0.0) || dt > kMaxStep) {
    throw ConfigError("integration step must lie in (0, " + std::to_string(kMaxStep) +
                      "] s, got " + std::to_string(dt));
  }
}

namespace {

void require_finite(double value, const char* name) {
  if (!std::isfinite(value)) throw InvalidInput(std::string(name) + " must be finite");
}

StateVector<2> to_vec(const LongitudinalState& s) { return {s.x, s.v}; }

}  // namespace

void LongitudinalParams::validate() const {
  if (!(m > 0.0) || !std::isfinite(m)) throw InvalidParameter("vehicle mass must be positive");
  if (!(rho >= 0.0) || !(c_d >= 0.0) || !(area >= 0.0)) {
    throw InvalidParameter("drag parameters must be non-negative");
  }
}

double drag_force(double v, const LongitudinalParams& params) {
  if (!params.drag_enabled) return 0.0;
  return -0.5 * params.rho * params.c_d * params.area * v * std::abs(v);
}

LongitudinalDerivative longitudinal_derivative(const LongitudinalState& state, double force,
                                               const LongitudinalParams& params) {
  require_finite(state.x, "x");
  require_finite(state.v, "v");
  require_finite(force, "force");
  params.validate();
  return {state.v, (force + drag_force(state.v, params)) / params.m};
}

LongitudinalState step_longitudinal(const LongitudinalState& state, double force,
                                    const LongitudinalParams& params, double dt) {
  require_finite(force, "force");
  params.validate();
  auto deriv = [&](const StateVector<2>& s) {
    return StateVector<2>{s[1], (force + drag_force(s[1], params)) / params.m};
  };
  const StateVector<2> s0 = to_vec(state);
  const StateVector<2> s1 = rk4_step(s0, dt, deriv);
  if (s1[1] >= 0.0) return {s1[0], s1[1]};
  if (state.v <= 0.0) return {state.x, 0.0};  // held at rest

  // v changes sign inside the step: bisect on the sub-step length so the
  // returned position is the one reached when the vehicle comes to rest.
  double lo = 0.0;
  double hi = dt;
  StateVector<2> at_lo = s0;
  for (int i = 0; i < 80 && hi - lo > 1e-15; ++i) {
    const double mid = 0.5 * (lo + hi);
    const StateVector<2> s = rk4_step(s0, mid, deriv);
    if (s[1] > 0.0) {
      lo = mid;
      at_lo = s;
    } else {
      hi = mid;
    }
  }
  return {at_lo[0], 0.0};
}

void LateralParams::validate() const {
  if (!(v_x > 0.0)) throw InvalidParameter("lateral model requires v_x > 0");
  if (!(c_f > 0.0) || !(c_r > 0.0) || !(l_f > 0.0) || !(l_r > 0.0) || !(m > 0.0) ||
      !(i_z > 0.0)) {
    throw InvalidParameter("cornering stiffness, axle distances, mass and inertia must be positive");
  }
  if (!(steering_limit > 0.0)) throw InvalidParameter("steering limit must be positive");
  if (!std::isfinite(m_z)) throw InvalidParameter("yaw torque must be finite");
}

LateralLinearModel lateral_linear_model(const LateralParams& p) {
  p.validate();
  LateralLinearModel model;
  model.a[0][0] = -(p.c_r + p.c_f) / (p.m * p.v_x);
  model.a[0][1] = (p.c_r * p.l_r - p.c_f * p.l_f) / (p.m * p.v_x) - p.v_x;
  model.a[1][0] = (p.c_r * p.l_r - p.c_f * p.l_f) / (p.i_z * p.v_x);
  model.a[1][1] = -(p.c_r * p.l_r * p.l_r + p.c_f * p.l_f * p.l_f) / (p.i_z * p.v_x);
  model.b_steer = {p.c_f / p.m, p.c_f * p.l_f / p.i_z};
  model.b_torque = {0.0, 1.0 / p.i_z};
  return model;
}

namespace {

StateVector<4> lateral_rhs(const StateVector<4>& s, double delta_f, const LateralParams& p,
                           const LateralLinearModel& model) {
  const double v_y = s[0];
  const double psi_dot = s[1];
  const double psi = s[2];
  return {
      model.a[0][0] * v_y + model.a[0][1] * psi_dot + model.b_steer[0] * delta_f +
          model.b_torque[0] * p.m_z,
      model.a[1][0] * v_y + model.a[1][1] * psi_dot + model.b_steer[1] * delta_f +
          model.b_torque[1] * p.m_z,
      psi_dot,
      p.v_x * std::sin(psi) + v_y * std::cos(psi),
  };
}

void check_steering(double delta_f, const LateralParams& p) {
  require_finite(delta_f, "delta_f");
  if (std::abs(delta_f) > p.steering_limit) {
    throw InvalidInput("steering angle exceeds the configured limit");
  }
}

}  // namespace

LateralDerivative lateral_derivative(const LateralState& state, double delta_f,
                                     const LateralParams& params) {
  const LateralLinearModel model = lateral_linear_model(params);
  check_steering(delta_f, params);
  require_finite(state.v_y, "v_y");
  require_finite(state.psi_dot, "psi_dot");
  require_finite(state.psi, "psi");
  require_finite(state.y, "y");
  const auto d = lateral_rhs({state.v_y, state.psi_dot, state.psi, state.y}, delta_f, params, model);
  return {d[0], d[1], d[2], d[3]};
}

LateralState step_lateral(const LateralState& state, double delta_f, const LateralParams& params,
                          double dt) {
  const LateralLinearModel model = lateral_linear_model(params);
  check_steering(delta_f, params);
  const auto s = rk4_step(StateVector<4>{state.v_y, state.psi_dot, state.psi, state.y}, dt,
                          [&](const StateVector<4>& x) { return lateral_rhs(x, delta_f, params, model); });
  return {s[0], s[1], s[2], s[3]};
}

}  // namespace aeb
