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
#include <cstddef>

#include "aeb/errors.hpp"

namespace aeb {

template <std::size_t N>
using StateVector = std::array<double, N>;

inline constexpr double kMaxStep = 0.1;

/// Throws ConfigError unless 0 < dt <= kMaxStep.
void check_step_size(double dt);

namespace detail {

template <std::size_t N>
StateVector<N> axpy(const StateVector<N>& x, double a, const StateVector<N>& y) {
  StateVector<N> out{};
  for (std::size_t i = 0; i < N; ++i) out[i] = x[i] + a * y[i];
  return out;
}

}  // namespace detail

/// One classical fourth-order Runge-Kutta step of ds/dt = deriv(s).
/// Inputs are held constant across the step (zero-order hold), so callers
/// close over them in `deriv`.
template <std::size_t N, class Deriv>
StateVector<N> rk4_step(const StateVector<N>& s, double dt, Deriv&& deriv) {
  check_step_size(dt);
  const StateVector<N> k1 = deriv(s);
  const StateVector<N> k2 = deriv(detail::axpy(s, 0.5 * dt, k1));
  const StateVector<N> k3 = deriv(detail::axpy(s, 0.5 * dt, k2));
  const StateVector<N> k4 = deriv(detail::axpy(s, dt, k3));
  StateVector<N> out{};
  for (std::size_t i = 0; i < N; ++i) {
    out[i] = s[i] + dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  }
  return out;
}

}  // namespace aeb
