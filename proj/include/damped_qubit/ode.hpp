// Copyright 2026 The damped_qubit Authors
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

/**
 * @file ode.hpp
 * @brief Fixed-step classical Runge-Kutta integration.
 *
 * Used as the independent numerical route next to the closed-form
 * propagators and correlation functions, so it deliberately knows nothing
 * about their structure.
 */
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>

namespace damped_qubit::ode {

/// Largest step, as a fraction of the fastest time scale.
inline constexpr double kStepFraction = 0.002;

/// Step size resolving both the Larmor period and the decay time.
inline double max_step(double omega, double gamma) {
  const double rate = std::max({omega, gamma, 1e-300});
  return kStepFraction / rate;
}

/// One RK4 step of dy/dt = f(y) for an autonomous right-hand side.
template <class State, class Rhs>
State rk4_step(const State &y, double h, Rhs &&f) {
  const State k1 = f(y);
  const State k2 = f(State(y + (h / 2.0) * k1));
  const State k3 = f(State(y + (h / 2.0) * k2));
  const State k4 = f(State(y + h * k3));
  return y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

/// Advances y over a duration using equal steps no longer than h_max.
template <class State, class Rhs>
State rk4_advance(State y, double duration, double h_max, Rhs &&f) {
  if (duration <= 0.0) return y;
  const auto steps = static_cast<std::size_t>(std::ceil(duration / h_max));
  const double h = duration / static_cast<double>(steps);
  for (std::size_t i = 0; i < steps; ++i) y = rk4_step(y, h, f);
  return y;
}

} // namespace damped_qubit::ode
