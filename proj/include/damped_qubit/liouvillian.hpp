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
 * @file liouvillian.hpp
 * @brief Heisenberg-picture Liouvillian of the damped qubit, its closed-form
 * and integrated propagators, and expectation-value evolution.
 *
 * Convention: a 4x4 matrix L over an operator basis {B_0..B_3} encodes
 * dB_i/dt = sum_j L_ij B_j. The propagator U(t) = exp(L t) therefore gives
 * B_i(t) = sum_j U_ij(t) B_j, and an operator with coefficient vector c
 * evolves to U(t)^T c.
 */
#pragma once

#include <cmath>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include <Eigen/Core>

#include "core.hpp"
#include "ode.hpp"

namespace damped_qubit {

enum class SuperOpKind { Generator, Propagator };

struct SuperOpMatrix {
  OperatorBasis basis = OperatorBasis::Pauli;
  SuperOpKind kind = SuperOpKind::Generator;
  std::optional<double> time; // elapsed time; propagators only
  Eigen::Matrix4d entries = Eigen::Matrix4d::Zero();

  double operator()(int row, int col) const { return entries(row, col); }
};

namespace detail {

inline void require_basis(const SuperOpMatrix &m, OperatorBasis b, const char *what) {
  if (m.basis != b)
    throw std::invalid_argument(std::string(what) + ": expected " + std::string(to_string(b)) +
                                " basis, got " + std::string(to_string(m.basis)));
}

inline void require_time(double t, const char *what) {
  if (!(t >= 0.0) || !std::isfinite(t)) throw std::domain_error(std::string(what) + ": time must be finite and >= 0");
}

/// gamma0 (exp(-gamma t) - 1) / gamma, which vanishes identically when gamma = 0.
inline double relaxation_offset(const SystemParams &p, double t) {
  if (p.gamma == 0.0) return 0.0;
  return p.gamma0 * std::expm1(-p.gamma * t) / p.gamma;
}

} // namespace detail

/// Generator over {sigma_x, sigma_y, sigma_z, I}.
inline SuperOpMatrix build_generator_pauli(const SystemParams &p) {
  SuperOpMatrix L{OperatorBasis::Pauli, SuperOpKind::Generator, std::nullopt, Eigen::Matrix4d::Zero()};
  auto &m = L.entries;
  m(0, 0) = -p.gamma / 2.0;
  m(0, 1) = -p.omega;
  m(1, 0) = p.omega;
  m(1, 1) = -p.gamma / 2.0;
  m(2, 2) = -p.gamma;
  m(2, 3) = -p.gamma0;
  return L;
}

/// Generator over {Pi_+, Pi_-, sigma_y, sigma_z}, Pi_+- projecting on the sigma_x eigenstates.
inline SuperOpMatrix build_generator_projector(const SystemParams &p) {
  SuperOpMatrix L{OperatorBasis::Projector, SuperOpKind::Generator, std::nullopt, Eigen::Matrix4d::Zero()};
  auto &m = L.entries;
  const double g4 = p.gamma / 4.0;
  const double w2 = p.omega / 2.0;
  m.row(0) << -g4, g4, -w2, 0.0;
  m.row(1) << g4, -g4, w2, 0.0;
  m.row(2) << p.omega, -p.omega, -p.gamma / 2.0, 0.0;
  m.row(3) << -p.gamma0, -p.gamma0, 0.0, -p.gamma;
  return L;
}

inline SuperOpMatrix build_generator(const SystemParams &p, OperatorBasis basis) {
  return basis == OperatorBasis::Pauli ? build_generator_pauli(p) : build_generator_projector(p);
}

/// Closed-form exp(L t). Defaults to the projector basis.
inline SuperOpMatrix propagator_analytic(const SystemParams &p, double t,
                                         OperatorBasis basis = OperatorBasis::Projector) {
  detail::require_time(t, "propagator_analytic");
  const double env = std::exp(-p.gamma * t / 2.0);
  const double c = env * std::cos(p.omega * t);
  const double s = env * std::sin(p.omega * t);
  const double decay = std::exp(-p.gamma * t);
  const double offset = detail::relaxation_offset(p, t);

  SuperOpMatrix U{basis, SuperOpKind::Propagator, t, Eigen::Matrix4d::Zero()};
  auto &m = U.entries;
  if (basis == OperatorBasis::Projector) {
    m.row(0) << (1.0 + c) / 2.0, (1.0 - c) / 2.0, -s / 2.0, 0.0;
    m.row(1) << (1.0 - c) / 2.0, (1.0 + c) / 2.0, s / 2.0, 0.0;
    m.row(2) << s, -s, c, 0.0;
    m.row(3) << offset, offset, 0.0, decay;
  } else {
    m.row(0) << c, -s, 0.0, 0.0;
    m.row(1) << s, c, 0.0, 0.0;
    m.row(2) << 0.0, 0.0, decay, offset;
    m.row(3) << 0.0, 0.0, 0.0, 1.0;
  }
  return U;
}

/**
 * @brief exp(L t) by fixed-step RK4 integration of dM/dt = L M, M(0) = I.
 *
 * The step is ode::max_step of the generator's fastest rate, shortened so
 * that an integer number of steps lands exactly on t.
 */
inline SuperOpMatrix propagator_numeric(const SuperOpMatrix &generator, double t) {
  if (generator.kind != SuperOpKind::Generator)
    throw std::invalid_argument("propagator_numeric: argument is not a generator");
  detail::require_time(t, "propagator_numeric");
  const Eigen::Matrix4d &L = generator.entries;
  const double rate = L.cwiseAbs().maxCoeff();
  const Eigen::Matrix4d M = ode::rk4_advance<Eigen::Matrix4d>(
      Eigen::Matrix4d::Identity(), t, ode::max_step(rate, 0.0),
      [&L](const Eigen::Matrix4d &X) -> Eigen::Matrix4d { return L * X; });
  return {generator.basis, SuperOpKind::Propagator, t, M};
}

/// Numeric propagators at each of a non-decreasing list of times, integrated
/// in one pass from t = 0.
inline std::vector<SuperOpMatrix> propagator_numeric(const SuperOpMatrix &generator, std::span<const double> times) {
  if (generator.kind != SuperOpKind::Generator)
    throw std::invalid_argument("propagator_numeric: argument is not a generator");
  const Eigen::Matrix4d &L = generator.entries;
  const double h_max = ode::max_step(L.cwiseAbs().maxCoeff(), 0.0);
  const auto rhs = [&L](const Eigen::Matrix4d &X) -> Eigen::Matrix4d { return L * X; };

  std::vector<SuperOpMatrix> out;
  out.reserve(times.size());
  Eigen::Matrix4d M = Eigen::Matrix4d::Identity();
  double now = 0.0;
  for (double t : times) {
    detail::require_time(t, "propagator_numeric");
    if (t < now) throw std::domain_error("propagator_numeric: times must be non-decreasing");
    M = ode::rk4_advance<Eigen::Matrix4d>(M, t - now, h_max, rhs);
    now = t;
    out.push_back({generator.basis, SuperOpKind::Propagator, t, M});
  }
  return out;
}

/// U(t1 + t2) = U(t2) U(t1) for the time-homogeneous semigroup.
inline SuperOpMatrix compose(const SuperOpMatrix &later, const SuperOpMatrix &earlier) {
  if (later.kind != SuperOpKind::Propagator || earlier.kind != SuperOpKind::Propagator)
    throw std::invalid_argument("compose: both arguments must be propagators");
  detail::require_basis(later, earlier.basis, "compose");
  return {earlier.basis, SuperOpKind::Propagator, *later.time + *earlier.time, later.entries * earlier.entries};
}

/// Heisenberg-evolves an operator: coefficients c -> U^T c.
inline OperatorVector evolve_operator(const SuperOpMatrix &propagator, const OperatorVector &op) {
  if (propagator.kind != SuperOpKind::Propagator)
    throw std::invalid_argument("evolve_operator: argument is not a propagator");
  if (propagator.basis != op.basis) throw std::domain_error("evolve_operator: operator and propagator bases differ");
  const Eigen::Vector4d c(op.coeffs[0], op.coeffs[1], op.coeffs[2], op.coeffs[3]);
  const Eigen::Vector4d out = propagator.entries.transpose() * c;
  return {op.basis, {out[0], out[1], out[2], out[3]}};
}

/**
 * @brief Bloch vector at time t, via <O(t)> = Tr[rho(0) O(t)].
 *
 * Row i of the Pauli propagator is sigma_i(t); contracting it with the
 * initial expectations (x, y, z, 1) gives <sigma_i(t)>. The identity entry
 * carries the inhomogeneous relaxation term.
 */
inline BlochState evolve_expectations(const SuperOpMatrix &pauli_propagator, const BlochState &initial) {
  detail::require_basis(pauli_propagator, OperatorBasis::Pauli, "evolve_expectations");
  const BlochState s = checked_state(initial);
  const Eigen::Vector4d v = pauli_propagator.entries * Eigen::Vector4d(s.x, s.y, s.z, 1.0);
  return {v[0], v[1], v[2]};
}

inline BlochState evolve_expectations(const SystemParams &p, const BlochState &initial, double t) {
  return evolve_expectations(propagator_analytic(p, t, OperatorBasis::Pauli), initial);
}

} // namespace damped_qubit
