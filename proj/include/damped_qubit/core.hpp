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
 * @file core.hpp
 * @brief Physical parameters, qubit state and operator representations,
 * and the l1-norm coherence monotone.
 *
 * Units: hbar = 1 and k_B = 1, so the temperature carries energy units and
 * omega / temperature is dimensionless.
 */
#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace damped_qubit {

/// Norm slack accepted on Bloch vectors before a state counts as unphysical.
inline constexpr double kBlochTolerance = 1e-9;

/**
 * @brief A time scale that may be unbounded.
 *
 * An isolated system (gamma = 0) never loses coherence; its characteristic
 * times are flagged as unbounded instead of being carried as infinities.
 */
class Timescale {
public:
  constexpr Timescale() = default;
  constexpr explicit Timescale(double value) : value_(value) {}

  static constexpr Timescale unbounded() { return Timescale{}; }

  constexpr bool bounded() const { return value_.has_value(); }

  /// Throws std::logic_error when unbounded.
  double value() const {
    if (!value_) throw std::logic_error("Timescale::value: time scale is unbounded");
    return *value_;
  }

  constexpr bool operator==(const Timescale &) const = default;

private:
  std::optional<double> value_;
};

/// Mean thermal occupation of the reservoir mode at frequency omega.
inline double thermal_occupation(double omega, double temperature) {
  if (!(omega > 0.0)) throw std::domain_error("thermal_occupation: omega must be positive");
  if (!(temperature >= 0.0)) throw std::domain_error("thermal_occupation: temperature must be non-negative");
  if (temperature == 0.0) return 0.0;
  // expm1 keeps the high-temperature regime accurate; overflow of
  // omega/temperature gives +inf and hence exactly 0.
  return 1.0 / std::expm1(omega / temperature);
}

struct SystemParams {
  double omega = 1.0;
  double gamma0 = 0.0;
  double temperature = 0.0;
  double n_thermal = 0.0;
  double gamma = 0.0;
  Timescale t_coherence;  // 2 / gamma
  Timescale tau_halflife; // 2 ln 2 / gamma

  bool isolated() const { return gamma == 0.0; }
};

/// Builds a fully populated SystemParams from the three physical inputs.
inline SystemParams derive_params(double omega, double gamma0, double temperature) {
  if (!(gamma0 >= 0.0)) throw std::domain_error("derive_params: gamma0 must be non-negative");
  SystemParams p;
  p.omega = omega;
  p.gamma0 = gamma0;
  p.temperature = temperature;
  p.n_thermal = thermal_occupation(omega, temperature);
  p.gamma = gamma0 * (2.0 * p.n_thermal + 1.0);
  if (p.gamma > 0.0) {
    p.t_coherence = Timescale{2.0 / p.gamma};
    p.tau_halflife = Timescale{2.0 * std::numbers::ln2 / p.gamma};
  }
  return p;
}

/// Pauli expectation values (<sigma_x>, <sigma_y>, <sigma_z>).
struct BlochState {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  double norm() const { return std::sqrt(x * x + y * y + z * z); }
  bool operator==(const BlochState &) const = default;
};

/**
 * @brief Validates a Bloch vector.
 *
 * Norms up to 1 + kBlochTolerance are accepted and rescaled onto the sphere
 * when they exceed 1; anything larger throws std::domain_error.
 */
inline BlochState checked_state(const BlochState &s) {
  const double r = s.norm();
  if (!std::isfinite(r) || r > 1.0 + kBlochTolerance)
    throw std::domain_error("BlochState: vector lies outside the Bloch ball");
  if (r <= 1.0) return s;
  return {s.x / r, s.y / r, s.z / r};
}

/// The |+> eigenstate of sigma_x, maximally coherent in the sigma_z basis.
constexpr BlochState maximally_coherent_state() { return {1.0, 0.0, 0.0}; }

using DensityMatrix = std::array<std::array<std::complex<double>, 2>, 2>;

/// rho = (I + x sigma_x + y sigma_y + z sigma_z) / 2 in the sigma_z basis.
inline DensityMatrix density_matrix(const BlochState &s) {
  using C = std::complex<double>;
  return {{{C{(1.0 + s.z) / 2.0, 0.0}, C{s.x / 2.0, -s.y / 2.0}},
           {C{s.x / 2.0, s.y / 2.0}, C{(1.0 - s.z) / 2.0, 0.0}}}};
}

inline BlochState bloch_vector(const DensityMatrix &rho) {
  return {2.0 * rho[1][0].real(), 2.0 * rho[1][0].imag(), (rho[0][0] - rho[1][1]).real()};
}

/// l1-norm of coherence in the sigma_z eigenbasis, sqrt(x^2 + y^2).
inline double coherence_l1(const BlochState &state) {
  const BlochState s = checked_state(state);
  return std::hypot(s.x, s.y);
}

// ---------------------------------------------------------------------------
// Operator vectors

enum class OperatorBasis {
  Pauli,     ///< {sigma_x, sigma_y, sigma_z, I}
  Projector, ///< {Pi_+, Pi_-, sigma_y, sigma_z}
};

inline std::string_view to_string(OperatorBasis b) {
  return b == OperatorBasis::Pauli ? "pauli" : "projector";
}

/// A qubit operator written as four real coefficients over a tagged basis.
struct OperatorVector {
  OperatorBasis basis = OperatorBasis::Pauli;
  std::array<double, 4> coeffs{};

  static constexpr OperatorVector pauli(double sx, double sy, double sz, double id) {
    return {OperatorBasis::Pauli, {sx, sy, sz, id}};
  }

  OperatorVector &operator+=(const OperatorVector &o) {
    require_same_basis(o, "operator+");
    for (std::size_t i = 0; i < 4; ++i) coeffs[i] += o.coeffs[i];
    return *this;
  }
  OperatorVector &operator-=(const OperatorVector &o) {
    require_same_basis(o, "operator-");
    for (std::size_t i = 0; i < 4; ++i) coeffs[i] -= o.coeffs[i];
    return *this;
  }
  OperatorVector &operator*=(double s) {
    for (auto &c : coeffs) c *= s;
    return *this;
  }

  friend OperatorVector operator+(OperatorVector a, const OperatorVector &b) { return a += b; }
  friend OperatorVector operator-(OperatorVector a, const OperatorVector &b) { return a -= b; }
  friend OperatorVector operator*(OperatorVector a, double s) { return a *= s; }
  friend OperatorVector operator*(double s, OperatorVector a) { return a *= s; }

  bool operator==(const OperatorVector &) const = default;

  void require_same_basis(const OperatorVector &o, const char *what) const {
    if (basis != o.basis)
      throw std::domain_error(std::string(what) + ": operands use different bases (" +
                              std::string(to_string(basis)) + " vs " + std::string(to_string(o.basis)) + ")");
  }
};

/// Re-expresses an operator in the other basis using Pi_+- = (I +- sigma_x)/2.
inline OperatorVector change_basis(const OperatorVector &op, OperatorBasis target) {
  if (op.basis == target) return op;
  const auto &c = op.coeffs;
  if (target == OperatorBasis::Projector) {
    // a sx + b sy + c sz + d I = (d + a) Pi_+ + (d - a) Pi_- + b sy + c sz
    return {OperatorBasis::Projector, {c[3] + c[0], c[3] - c[0], c[1], c[2]}};
  }
  // p Pi_+ + q Pi_- = (p - q)/2 sx + (p + q)/2 I
  return {OperatorBasis::Pauli, {(c[0] - c[1]) / 2.0, c[2], c[3], (c[0] + c[1]) / 2.0}};
}

/// Expectation value of an operator in the given state.
inline double expectation(const OperatorVector &op, const BlochState &s) {
  const OperatorVector p = change_basis(op, OperatorBasis::Pauli);
  return p.coeffs[0] * s.x + p.coeffs[1] * s.y + p.coeffs[2] * s.z + p.coeffs[3];
}

} // namespace damped_qubit
