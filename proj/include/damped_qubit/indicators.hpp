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
 * @file indicators.hpp
 * @brief Quantumness indicators for the damped qubit: Leggett-Garg functions
 * with their quantum times, the no-signaling-in-time witness and the
 * Hilbert-Schmidt measurement-disturbance norm.
 *
 * The dichotomic observable of the Leggett-Garg functions is sigma_x,
 * measured at three equally spaced times tau/2 apart.
 */
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string_view>
#include <utility>

#include "core.hpp"
#include "correlations.hpp"
#include "liouvillian.hpp"

namespace damped_qubit {

/// exp(-gamma tau / 2): the l1 coherence of |+> after a lag tau.
inline double coherence_envelope(const SystemParams &p, double tau) { return std::exp(-p.gamma * tau / 2.0); }

// ---------------------------------------------------------------------------
// Leggett-Garg functions

enum class LgSign { Plus, Minus };

inline std::string_view to_string(LgSign s) { return s == LgSign::Plus ? "plus" : "minus"; }

/// K3(tau) = -C(tau) + 2 C(tau / 2).
inline double k3(const SystemParams &p, double tau) {
  return -correlation_analytic(p, tau) + 2.0 * correlation_analytic(p, tau / 2.0);
}

/// K+(tau) = -C(tau) - 2 C(tau / 2); K-(tau) is k3 itself.
inline double k_pm(const SystemParams &p, double tau, LgSign sign) {
  if (sign == LgSign::Minus) return k3(p, tau);
  return -correlation_analytic(p, tau) - 2.0 * correlation_analytic(p, tau / 2.0);
}

/// Absolute slack on K >= 1; K-(0) = 1 holds exactly and must count.
inline constexpr double kLgLevelTolerance = 1e-12;

/// Scan step of the quantum-time search: 200 samples per half Larmor period.
inline double quantum_time_scan_step(const SystemParams &p) { return std::numbers::pi / (200.0 * p.omega); }

/// Hard ceiling on any violation, from |K| <= 3 exp(-gamma tau / 4).
inline double quantum_time_ceiling(const SystemParams &p) { return 4.0 * std::log(3.0) / p.gamma; }

struct QuantumTime {
  LgSign sign = LgSign::Minus;
  Timescale value;                  // unbounded when gamma = 0
  std::pair<double, double> bracket{0.0, 0.0};
  bool violated = true;             // false: K never reaches 1, value is 0
};

/**
 * @brief Largest tau with K_sign(tau) >= 1.
 *
 * Scans (0, ceiling] backwards on quantum_time_scan_step for the last sample
 * at or above the level, then bisects the crossing down to adjacent doubles.
 * The returned value is the lower bracket end, so it is itself a member of
 * the set.
 */
inline QuantumTime quantum_time(const SystemParams &p, LgSign sign) {
  QuantumTime q;
  q.sign = sign;
  if (p.isolated()) {
    q.value = Timescale::unbounded();
    return q;
  }
  const auto above = [&](double tau) { return k_pm(p, tau, sign) - 1.0 >= -kLgLevelTolerance; };

  const double ceiling = quantum_time_ceiling(p);
  const double step = quantum_time_scan_step(p);
  const auto samples = static_cast<std::size_t>(std::ceil(ceiling / step));
  const auto tau_at = [&](std::size_t i) { return i == samples ? ceiling : static_cast<double>(i) * step; };

  std::size_t i = samples + 1;
  while (i-- > 0) {
    if (above(tau_at(i))) break;
  }
  if (i > samples) {
    q.violated = false;
    q.value = Timescale{0.0};
    return q;
  }
  if (i == samples) {
    q.bracket = {ceiling, ceiling};
    q.value = Timescale{ceiling};
    return q;
  }

  double lo = tau_at(i);
  double hi = tau_at(i + 1);
  // Halve down to adjacent doubles. That is narrower than 1e-12 * ceiling,
  // which alone would leave K(lo) off the level by up to |K'| * width.
  for (;;) {
    const double mid = lo + (hi - lo) / 2.0;
    if (mid <= lo || mid >= hi) break;
    (above(mid) ? lo : hi) = mid;
  }
  q.bracket = {lo, hi};
  q.value = Timescale{lo};
  return q;
}

// ---------------------------------------------------------------------------
// No-signaling-in-time witness
//
// The qubit starts in |+>. At tau/2 a non-selective sigma_x measurement is
// either made or skipped; at tau the projector Pi_+ is measured. The witness
// is the gap between the two resulting Pi_+ probabilities.

/// W_q(tau) = exp(-gamma tau / 2) sin^2(omega tau / 2) / 2.
inline double witness_analytic(const SystemParams &p, double tau) {
  const double s = std::sin(p.omega * tau / 2.0);
  return 0.5 * std::exp(-p.gamma * tau / 2.0) * s * s;
}

/// |p_+(tau) - p'_+(tau)| assembled from the projector-basis propagator.
inline double witness_propagator(const SystemParams &p, double tau) {
  const OperatorVector plus_projector{OperatorBasis::Projector, {1.0, 0.0, 0.0, 0.0}};
  const BlochState initial = maximally_coherent_state();

  // Unmeasured: <Pi_+(tau)> in |+>.
  const double p_quantum = expectation(evolve_operator(propagator_analytic(p, tau), plus_projector), initial);

  // Measured at tau/2: classical chain through the Pi_+- block of U(tau/2).
  // Omega_mn = U_mn is the probability to find m given preparation in n.
  const Eigen::Matrix2d omega_half = propagator_analytic(p, tau / 2.0).entries.topLeftCorner<2, 2>();
  const Eigen::Vector2d p0(1.0, 0.0);
  const Eigen::Vector2d p_mid = omega_half * p0;
  const Eigen::Vector2d p_end = omega_half * p_mid;
  return std::abs(p_quantum - p_end[0]);
}

/// (1/2) <sigma_y(tau/2)>^2 for the |+> preparation.
inline double witness_sigma_y(const SystemParams &p, double tau) {
  const BlochState s = evolve_expectations(p, maximally_coherent_state(), tau / 2.0);
  return 0.5 * s.y * s.y;
}

struct WitnessResult {
  double tau = 0.0;
  double w_analytic = 0.0;
  double w_propagator = 0.0;
  double w_sigma_y = 0.0;

  double max_discrepancy() const {
    return std::max({std::abs(w_analytic - w_propagator), std::abs(w_analytic - w_sigma_y),
                     std::abs(w_propagator - w_sigma_y)});
  }
};

inline WitnessResult witness(const SystemParams &p, double tau) {
  return {tau, witness_analytic(p, tau), witness_propagator(p, tau), witness_sigma_y(p, tau)};
}

// ---------------------------------------------------------------------------
// Measurement disturbance

enum class Normalization {
  Raw,   ///< A = a_0 I + sum_i a_i sigma_i
  Normed ///< A = (a_0 I + sum_i a_i sigma_i) / sqrt(2)
};

/**
 * @brief Squared Hilbert-Schmidt norm of the commutator [A, B].
 *
 * [A, B] = sum_k lambda_k sigma_k with lambda_k = 2i sum_ij a_i b_j eps_ijk;
 * the identity parts drop out. Tr(sigma_k sigma_l) = 2 delta_kl gives
 * ||[A, B]||^2 = 2 sum_k |lambda_k|^2.
 */
inline double disturbance_norm(const OperatorVector &a, const OperatorVector &b,
                               Normalization norm = Normalization::Raw) {
  if (a.basis != OperatorBasis::Pauli || b.basis != OperatorBasis::Pauli)
    throw std::domain_error("disturbance_norm: operators must be given in the Pauli basis");
  const double scale = norm == Normalization::Normed ? 1.0 / std::numbers::sqrt2 : 1.0;

  constexpr auto levi_civita = [](int i, int j, int k) -> double {
    return static_cast<double>((i - j) * (j - k) * (k - i)) / 2.0;
  };
  std::array<std::complex<double>, 3> lambda{};
  for (int k = 0; k < 3; ++k)
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        lambda[k] += std::complex<double>(0.0, 2.0) * (scale * a.coeffs[i]) * (scale * b.coeffs[j]) *
                     levi_civita(i, j, k);

  double sum = 0.0;
  for (const auto &l : lambda) sum += std::norm(l);
  return 2.0 * sum;
}

} // namespace damped_qubit
