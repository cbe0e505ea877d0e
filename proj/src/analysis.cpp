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

#include "aeb/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "aeb/errors.hpp"
#include "aeb/integrator.hpp"

namespace aeb {

SecondOrderPolynomial closed_loop_denominator(const PdGains& gains, double m) {
  if (!(m > 0.0)) throw InvalidParameter("mass must be positive");
  const double k = gains.k_inner;
  return {m, k * gains.k_d, k + k * gains.k_p};
}

bool routh_hurwitz_stable(const SecondOrderPolynomial& p) {
  if (p.a2 == 0.0) throw DegenerateSystem("leading coefficient is zero");
  const double sign = p.a2 > 0.0 ? 1.0 : -1.0;
  // First column of the Routh array for a second-order polynomial is
  // (a2, a1, a0), so the criterion reduces to a strict sign check.
  return sign * p.a1 > 0.0 && sign * p.a0 > 0.0;
}

PoleSummary closed_loop_poles(const SecondOrderPolynomial& p) {
  if (p.a2 == 0.0) throw DegenerateSystem("leading coefficient is zero");
  PoleSummary out;
  const double b = p.a1 / p.a2;
  const double c = p.a0 / p.a2;
  const double disc = b * b - 4.0 * c;
  if (disc < 0.0) {
    const double re = -0.5 * b;
    const double im = 0.5 * std::sqrt(-disc);
    out.poles = {std::complex<double>(re, im), std::complex<double>(re, -im)};
  } else {
    // Avoid cancellation: compute the larger-magnitude root first.
    const double q = -0.5 * (b + std::copysign(std::sqrt(disc), b));
    const double r1 = q;
    const double r2 = q != 0.0 ? c / q : 0.0;
    out.poles = {std::complex<double>(std::max(r1, r2), 0.0),
                 std::complex<double>(std::min(r1, r2), 0.0)};
  }
  constexpr double nan = std::numeric_limits<double>::quiet_NaN();
  out.natural_frequency = c >= 0.0 ? std::sqrt(c) : nan;
  out.damping_ratio = p.a0 * p.a2 > 0.0 ? p.a1 / (2.0 * std::sqrt(p.a0 * p.a2)) : nan;
  return out;
}

StabilityReport stability_report(const SecondOrderPolynomial& p) {
  return {p, routh_hurwitz_stable(p), closed_loop_poles(p)};
}

double ramp_error_bound(double m, double k_inner, double ramp_slope) {
  if (!(m > 0.0) || !(k_inner > 0.0)) throw InvalidParameter("m and k_inner must be positive");
  return ramp_slope * m / k_inner;
}

std::vector<double> simulate_velocity_loop_ramp(double m, double k_inner, double ramp_slope,
                                                double horizon, double dt) {
  if (!(m > 0.0) || !(k_inner > 0.0)) throw InvalidParameter("m and k_inner must be positive");
  check_step_size(dt);
  const auto steps = static_cast<std::size_t>(std::llround(horizon / dt));
  std::vector<double> e2;
  e2.reserve(steps + 1);
  // State (t, v); time carried in the state so the ramp is exact inside RK4.
  StateVector<2> s{0.0, 0.0};
  e2.push_back(0.0);
  for (std::size_t k = 0; k < steps; ++k) {
    s = rk4_step(s, dt, [&](const StateVector<2>& z) {
      return StateVector<2>{1.0, k_inner * (ramp_slope * z[0] - z[1]) / m};
    });
    e2.push_back(ramp_slope * s[0] - s[1]);
  }
  return e2;
}

std::vector<double> simulate_step_response(const SecondOrderPolynomial& den, double b1, double b0,
                                           double horizon, double dt) {
  if (den.a2 == 0.0) throw DegenerateSystem("leading coefficient is zero");
  check_step_size(dt);
  const auto steps = static_cast<std::size_t>(std::llround(horizon / dt));
  std::vector<double> y;
  y.reserve(steps + 1);
  StateVector<2> z{0.0, 0.0};
  auto output = [&](const StateVector<2>& s) { return b1 * s[1] + b0 * s[0]; };
  y.push_back(output(z));
  for (std::size_t k = 0; k < steps; ++k) {
    z = rk4_step(z, dt, [&](const StateVector<2>& s) {
      return StateVector<2>{s[1], (1.0 - den.a1 * s[1] - den.a0 * s[0]) / den.a2};
    });
    y.push_back(output(z));
  }
  return y;
}

}  // namespace aeb
