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
 * @file correlations.hpp
 * @brief Symmetrized two-time correlation of sigma_x, in closed form and by
 * integrating the quantum-regression equations.
 */
#pragma once

#include <cmath>
#include <complex>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "core.hpp"
#include "liouvillian.hpp"
#include "ode.hpp"

namespace damped_qubit {

/// C(tau) = <{sigma_x(t), sigma_x(t + tau)}>/2 = exp(-gamma tau / 2) cos(omega tau).
inline double correlation_analytic(const SystemParams &p, double tau) {
  return std::exp(-p.gamma * tau / 2.0) * std::cos(p.omega * tau);
}

enum class CorrelationKind { Analytic, RegressionOde };

class CorrelationSeries {
public:
  CorrelationSeries(std::vector<double> tau_grid, std::vector<double> values, CorrelationKind kind,
                    std::vector<double> imaginary = {})
      : tau_grid_(std::move(tau_grid)), values_(std::move(values)), imaginary_(std::move(imaginary)),
        kind_(kind) {}

  const std::vector<double> &tau_grid() const { return tau_grid_; }
  const std::vector<double> &values() const { return values_; }
  CorrelationKind kind() const { return kind_; }
  std::size_t size() const { return values_.size(); }

  /// Im <sigma_x(t) sigma_x(t + tau)>; carries <sigma_z>(t) and is empty for
  /// analytic series. Diagnostic only.
  const std::vector<double> &imaginary_part() const { return imaginary_; }

private:
  std::vector<double> tau_grid_;
  std::vector<double> values_;
  std::vector<double> imaginary_;
  CorrelationKind kind_;
};

namespace detail {

inline void require_lag_grid(std::span<const double> grid, const char *what) {
  if (grid.empty() || grid.front() != 0.0) throw std::domain_error(std::string(what) + ": grid must start at 0");
  for (std::size_t i = 1; i < grid.size(); ++i)
    if (!(grid[i] > grid[i - 1])) throw std::domain_error(std::string(what) + ": grid must be strictly increasing");
}

} // namespace detail

inline CorrelationSeries correlation_series_analytic(const SystemParams &p, std::span<const double> tau_grid) {
  detail::require_lag_grid(tau_grid, "correlation_series_analytic");
  std::vector<double> values;
  values.reserve(tau_grid.size());
  for (double tau : tau_grid) values.push_back(correlation_analytic(p, tau));
  return {{tau_grid.begin(), tau_grid.end()}, std::move(values), CorrelationKind::Analytic};
}

/**
 * @brief Integrates the regression equations for
 * (<sigma_x(t) sigma_x(t+tau)>, <sigma_x(t) sigma_y(t+tau)>).
 *
 * Only the (sigma_x, sigma_y) block of the Pauli generator couples these
 * two correlators. The initial vector is (1, i <sigma_z>(t)) from
 * sigma_x sigma_x = I and sigma_x sigma_y = i sigma_z. The block is real, so
 * the real part starts at (1, 0) whatever <sigma_z>(t) is; that real part is
 * the symmetrized correlator returned in values().
 */
inline CorrelationSeries correlation_regression(const SystemParams &p, std::span<const double> tau_grid,
                                                double initial_z) {
  detail::require_lag_grid(tau_grid, "correlation_regression");
  if (!(std::abs(initial_z) <= 1.0)) throw std::domain_error("correlation_regression: |<sigma_z>| must be <= 1");

  const Eigen::Matrix2d block = build_generator_pauli(p).entries.topLeftCorner<2, 2>();
  const Eigen::Matrix2cd A = block.cast<std::complex<double>>();
  const auto rhs = [&A](const Eigen::Vector2cd &c) -> Eigen::Vector2cd { return A * c; };
  const double h_max = ode::max_step(p.omega, p.gamma);

  std::vector<double> re, im;
  re.reserve(tau_grid.size());
  im.reserve(tau_grid.size());
  Eigen::Vector2cd c(std::complex<double>(1.0, 0.0), std::complex<double>(0.0, initial_z));
  double now = 0.0;
  for (double tau : tau_grid) {
    c = ode::rk4_advance<Eigen::Vector2cd>(c, tau - now, h_max, rhs);
    now = tau;
    re.push_back(c[0].real());
    im.push_back(c[0].imag());
  }
  return {{tau_grid.begin(), tau_grid.end()}, std::move(re), CorrelationKind::RegressionOde, std::move(im)};
}

} // namespace damped_qubit
