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
 * @file validation.hpp
 * @brief Cross-validation suite: every closed form checked against an
 * independent route (integrator, brute-force grid, alternative formulation)
 * or a known exact value.
 *
 * Shared by the `check` subcommand and the acceptance test binary.
 */
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "core.hpp"
#include "correlations.hpp"
#include "indicators.hpp"
#include "liouvillian.hpp"
#include "sweep.hpp"

namespace damped_qubit::validation {

using std::numbers::pi;

struct CheckResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
};

namespace detail {

inline std::string fmt(double v) { return format_value(v); }

inline std::vector<double> linspace(double lo, double hi, std::size_t n) {
  return Grid{lo, hi, n}.points();
}

} // namespace detail

/// Closed-form projector-basis propagator vs RK4 integration of dM/dt = L M.
inline CheckResult propagator_oracle() {
  CheckResult r{1, "propagator closed form matches RK4 integration (1e-9)"};
  const double omega = 1.0;
  const std::vector<double> times = detail::linspace(0.0, 20.0, 200);
  double worst = 0.0;
  for (double gamma0 : {0.0, 0.01, 0.04}) {
    for (double temperature : {0.0, omega / std::numbers::ln2}) {
      const SystemParams p = derive_params(omega, gamma0, temperature);
      const auto numeric = propagator_numeric(build_generator_projector(p), times);
      for (std::size_t i = 0; i < times.size(); ++i) {
        const SuperOpMatrix exact = propagator_analytic(p, times[i]);
        worst = std::max(worst, (exact.entries - numeric[i].entries).cwiseAbs().maxCoeff());
      }
    }
  }
  r.passed = worst <= 1e-9;
  r.detail = "max entrywise deviation " + detail::fmt(worst);
  return r;
}

/// Regression-theorem integration vs exp(-gamma tau/2) cos(omega tau), plus
/// independence from the reference state.
inline CheckResult correlation_oracle() {
  CheckResult r{2, "regression ODE matches closed-form correlation (1e-8), stationary"};
  const SystemParams p = derive_params(1.0, 0.04, 0.0);
  const std::vector<double> grid = detail::linspace(0.0, 8.0 * pi, 500);
  // Two reference states: the stationary <sigma_z> and the |+> value.
  const auto a = correlation_regression(p, grid, -p.gamma0 / p.gamma);
  const auto b = correlation_regression(p, grid, 0.0);
  double worst = 0.0, drift = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    worst = std::max(worst, std::abs(a.values()[i] - correlation_analytic(p, grid[i])));
    drift = std::max(drift, std::abs(a.values()[i] - b.values()[i]));
  }
  r.passed = worst <= 1e-8 && drift <= 1e-9;
  r.detail = "max deviation " + detail::fmt(worst) + ", stationarity drift " + detail::fmt(drift);
  return r;
}

/// The three witness formulations on 1000 random (params, tau) samples.
inline CheckResult witness_triple_equality() {
  CheckResult r{3, "witness formulations agree on 1000 samples (1e-10)"};
  std::mt19937_64 rng(20161016);
  std::uniform_real_distribution<double> omega_d(0.2, 5.0), gamma0_d(0.0, 0.2), temp_d(0.0, 5.0), phase_d(0.0, 12.0 * pi);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double omega = omega_d(rng);
    // every fourth sample is isolated
    const double gamma0 = i % 4 == 0 ? 0.0 : gamma0_d(rng);
    const SystemParams p = derive_params(omega, gamma0, temp_d(rng));
    worst = std::max(worst, witness(p, phase_d(rng) / omega).max_discrepancy());
  }
  r.passed = worst <= 1e-10;
  r.detail = "max discrepancy " + detail::fmt(worst);
  return r;
}

/// Brute-force maximum of W_q over four Larmor periods at gamma = 0.
inline CheckResult undamped_witness_maximum() {
  CheckResult r{4, "undamped witness maximum is 1/2 at omega tau = n pi"};
  const SystemParams p = derive_params(1.0, 0.0, 0.0);
  constexpr std::size_t per_pi = 1000;
  double best = -1.0;
  std::size_t arg = 0;
  for (std::size_t i = 0; i <= 8 * per_pi; ++i) {
    const double w = witness_analytic(p, static_cast<double>(i) * pi / per_pi);
    if (w > best) best = w, arg = i;
  }
  // all maxima, not just the first
  bool located = true;
  for (std::size_t i = 0; i <= 8 * per_pi; ++i) {
    const double w = witness_analytic(p, static_cast<double>(i) * pi / per_pi);
    if (std::abs(w - best) <= 1e-9 && i % per_pi != 0) located = false;
  }
  const double n = static_cast<double>(arg) / per_pi;
  r.passed = std::abs(best - 0.5) <= 1e-9 && located && arg % per_pi == 0;
  r.detail = "max " + detail::fmt(best) + " at omega tau = " + detail::fmt(n) + " pi";
  return r;
}

/// W_q(tau) <= exp(-gamma tau/2)/2 for gamma = 0.04.
inline CheckResult witness_coherence_bound() {
  CheckResult r{5, "witness bounded by C_l1/2 at gamma = 0.04"};
  const SystemParams p = derive_params(1.0, 0.04, 0.0);
  double worst = -1.0;
  for (double tau : detail::linspace(0.0, 200.0, 20001)) {
    const double c = coherence_l1(evolve_expectations(p, maximally_coherent_state(), tau));
    worst = std::max(worst, witness_analytic(p, tau) - c / 2.0);
  }
  r.passed = worst <= 1e-12;
  r.detail = "max of W_q - C_l1/2: " + detail::fmt(worst);
  return r;
}

/// Brute-force maximum of K3 over one period at gamma = 0, plus the K- identities.
inline CheckResult undamped_lg_maximum() {
  CheckResult r{6, "undamped K3 maximum 1.5 at omega tau = 2 pi/3; K-(0) = 1; K- == K3"};
  const SystemParams p = derive_params(1.0, 0.0, 0.0);
  const double period = 4.0 * pi;
  constexpr std::size_t n = 1'000'000;
  const double step = period / static_cast<double>(n);
  double best = -10.0, arg = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double tau = static_cast<double>(i) * step;
    const double k = k3(p, tau);
    if (k > best) best = k, arg = tau;
  }
  // 2 pi/3 and its mirror 10 pi/3 within one 4 pi period
  const double dist = std::min(std::abs(arg - 2.0 * pi / 3.0), std::abs(arg - 10.0 * pi / 3.0));
  bool identical = k_pm(p, 0.0, LgSign::Minus) == 1.0;
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> tau_d(0.0, 100.0), g_d(0.0, 0.5);
  for (int i = 0; i < 10000 && identical; ++i) {
    const SystemParams q = derive_params(1.0 + g_d(rng), g_d(rng), g_d(rng));
    const double tau = tau_d(rng);
    identical = k_pm(q, tau, LgSign::Minus) == k3(q, tau);
  }
  r.passed = std::abs(best - 1.5) <= 1e-6 && dist <= step && identical;
  r.detail = "max " + detail::fmt(best) + " at omega tau = " + detail::fmt(arg) + ", K- identities " +
             (identical ? "hold" : "fail");
  return r;
}

/// No simultaneous violation of K+ and K- over one period at gamma = 0.
inline CheckResult lg_complementarity() {
  CheckResult r{7, "K+ and K- never both exceed 1 at gamma = 0"};
  const SystemParams p = derive_params(1.0, 0.0, 0.0);
  std::size_t both = 0, violations = 0;
  for (double tau : detail::linspace(0.0, 4.0 * pi, 100001)) {
    const bool plus = k_pm(p, tau, LgSign::Plus) > 1.0;
    const bool minus = k_pm(p, tau, LgSign::Minus) > 1.0;
    both += plus && minus;
    violations += plus || minus;
  }
  r.passed = both == 0 && violations > 0;
  r.detail = std::to_string(both) + " simultaneous violations among " + std::to_string(violations);
  return r;
}

/// Last grid point with K >= 1 on an n-point grid over [0, ceiling]; the
/// second member is the grid spacing.
inline std::pair<double, double> dense_scan_quantum_time(const SystemParams &p, LgSign sign,
                                                         std::size_t n = 1'000'000) {
  const double ceiling = quantum_time_ceiling(p);
  const double spacing = ceiling / static_cast<double>(n - 1);
  double last = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double tau = static_cast<double>(i) * spacing;
    if (k_pm(p, tau, sign) >= 1.0 - kLgLevelTolerance) last = tau;
  }
  return {last, spacing};
}

inline std::vector<double> quantum_time_temperatures() {
  std::vector<double> t;
  for (int i = 0; i < 10; ++i) t.push_back(10.0 * i);
  return t;
}

/// Quantum times at omega = 20, gamma0 = 0.01 over ten temperatures.
inline CheckResult quantum_time_bounds() {
  CheckResult r{8, "quantum times bounded by tau_c, tau_q- non-increasing, match dense scan"};
  bool bounded = true, monotone = true, scan = true;
  double prev = std::numeric_limits<double>::infinity(), worst_scan = 0.0;
  std::ostringstream detail;
  for (double temperature : quantum_time_temperatures()) {
    const SystemParams p = derive_params(20.0, 0.01, temperature);
    const double tau_c = p.tau_halflife.value();
    for (LgSign sign : {LgSign::Plus, LgSign::Minus}) {
      const QuantumTime q = quantum_time(p, sign);
      const double value = q.value.value();
      bounded = bounded && value <= tau_c;
      const auto [oracle, spacing] = dense_scan_quantum_time(p, sign);
      const double gap = std::abs(value - oracle);
      worst_scan = std::max(worst_scan, gap / spacing);
      scan = scan && gap <= spacing;
      if (sign == LgSign::Minus) {
        monotone = monotone && value <= prev;
        prev = value;
      }
    }
  }
  r.passed = bounded && monotone && scan;
  detail << "bound " << (bounded ? "holds" : "fails") << ", monotone " << (monotone ? "yes" : "no")
         << ", worst scan gap " << detail::fmt(worst_scan) << " grid spacings";
  r.detail = detail.str();
  return r;
}

/// C_l1 from evolved expectations reaches 1/2 at the coherence half-life.
inline CheckResult coherence_half_life() {
  CheckResult r{9, "C_l1(tau_c) = 1/2 (1e-10)"};
  double worst = 0.0;
  for (double gamma0 : {0.01, 0.04, 0.3})
    for (double temperature : {0.0, 1.0, 25.0}) {
      const SystemParams p = derive_params(1.0, gamma0, temperature);
      const double c = coherence_l1(evolve_expectations(p, maximally_coherent_state(), p.tau_halflife.value()));
      worst = std::max(worst, std::abs(c - 0.5));
    }
  r.passed = worst <= 1e-10;
  r.detail = "max deviation " + detail::fmt(worst);
  return r;
}

/// Commutator norms and the witness-maximum / LG-boundary coincidence.
inline CheckResult disturbance_and_boundary() {
  CheckResult r{10, "||[sx/sqrt2, sy/sqrt2]||^2 = 2, self-commutator 0, witness maxima on K = 1"};
  const double root = 1.0 / std::numbers::sqrt2;
  const double xy = disturbance_norm(OperatorVector::pauli(root, 0, 0, 0), OperatorVector::pauli(0, root, 0, 0));
  const double xx = disturbance_norm(OperatorVector::pauli(root, 0, 0, 0), OperatorVector::pauli(root, 0, 0, 0));
  const SystemParams p = derive_params(1.0, 0.0, 0.0);
  double worst = 0.0;
  for (int k = 0; k < 20; ++k) {
    const double tau = (2.0 * k + 1.0) * pi;
    worst = std::max({worst, std::abs(k_pm(p, tau, LgSign::Plus) - 1.0), std::abs(k_pm(p, tau, LgSign::Minus) - 1.0)});
  }
  r.passed = std::abs(xy - 2.0) <= 1e-15 && xx == 0.0 && worst <= 1e-9;
  r.detail = "norm " + detail::fmt(xy) + ", self " + detail::fmt(xx) + ", max |K - 1| at maxima " + detail::fmt(worst);
  return r;
}

/// Repeated time series with the same spec give byte-identical CSV.
inline CheckResult series_determinism() {
  CheckResult r{11, "identical series specs give byte-identical CSV"};
  SweepSpec spec;
  spec.mode = SweepMode::TimeSeries;
  spec.omega = 1.0;
  spec.gamma0 = 0.04;
  spec.grid = {0.0, 8.0 * pi, 801};
  spec.quantities = parse_quantities("C_l1,K3,K_plus,K_minus,W_q,correlation");
  const SweepOutput a = run_time_series(spec, 1);
  const SweepOutput b = run_time_series(spec);
  r.passed = a.csv == b.csv && a.ok() && b.ok();
  r.detail = std::to_string(a.csv.size()) + " bytes, " + (a.csv == b.csv ? "identical" : "different");
  return r;
}

inline std::vector<std::function<CheckResult()>> all_checks() {
  return {propagator_oracle,        correlation_oracle, witness_triple_equality, undamped_witness_maximum,
          witness_coherence_bound,  undamped_lg_maximum, lg_complementarity,     quantum_time_bounds,
          coherence_half_life,      disturbance_and_boundary, series_determinism};
}

inline std::vector<CheckResult> run_all() {
  std::vector<CheckResult> out;
  for (const auto &check : all_checks()) out.push_back(check());
  return out;
}

} // namespace damped_qubit::validation
