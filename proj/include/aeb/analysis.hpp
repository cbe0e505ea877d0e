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

#include <array>
#include <complex>
#include <vector>

#include "aeb/controllers.hpp"

namespace aeb {

/// a2 s^2 + a1 s + a0
struct SecondOrderPolynomial {
  double a2 = 1.0;
  double a1 = 0.0;
  double a0 = 0.0;

  friend bool operator==(const SecondOrderPolynomial&, const SecondOrderPolynomial&) = default;
};

struct PoleSummary {
  std::array<std::complex<double>, 2> poles{};
  double natural_frequency = 0.0;  ///< sqrt(a0/a2); NaN when a0/a2 < 0
  double damping_ratio = 0.0;      ///< a1 / (2 sqrt(a0 a2)); NaN when a0 a2 <= 0
};

struct StabilityReport {
  SecondOrderPolynomial coefficients;
  bool stable = false;
  PoleSummary poles;
};

/// Denominator of the position complementary sensitivity of the longitudinal
/// loop: m s^2 + K K_d s + K (1 + K_p). Drag-free, no clamps.
SecondOrderPolynomial closed_loop_denominator(const PdGains& gains, double m);

/// Second-order Routh-Hurwitz test. The polynomial is sign-normalized so that
/// a2 > 0; stable iff a1 > 0 and a0 > 0 (marginal cases are not stable).
/// Throws DegenerateSystem when a2 == 0.
bool routh_hurwitz_stable(const SecondOrderPolynomial& p);

/// Roots of the quadratic, ordered with non-negative imaginary part first.
PoleSummary closed_loop_poles(const SecondOrderPolynomial& p);

StabilityReport stability_report(const SecondOrderPolynomial& p);

/// Steady-state inner-loop velocity error for a reference ramp of the given
/// slope: slope * m / k_inner (final value theorem on m s / (m s + K)).
double ramp_error_bound(double m, double k_inner, double ramp_slope);

/// Time-domain check of the ramp bound: integrates m dv/dt = K (r_v - v) with
/// r_v = slope * t from rest and returns e2 = r_v - v at each sample.
std::vector<double> simulate_velocity_loop_ramp(double m, double k_inner, double ramp_slope,
                                                double horizon, double dt);

/// Unit step response of (b1 s + b0) / den, sampled every dt from t = 0.
/// Uses a controllable-canonical realization integrated with RK4.
std::vector<double> simulate_step_response(const SecondOrderPolynomial& den, double b1, double b0,
                                           double horizon, double dt);

}  // namespace aeb
