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
 * @file sweep.hpp
 * @brief Time-series and temperature sweeps rendered as CSV.
 *
 * CSV layout: comma separated, '.' decimal point, header row, LF line
 * endings, 15 significant digits, unbounded values written as `inf`.
 * Rows follow grid order regardless of how the work was scheduled, so an
 * identical spec always yields byte-identical text.
 */
#pragma once

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <exception>
#include <functional>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>
#include <thread>
#include <vector>

#include "core.hpp"
#include "indicators.hpp"
#include "liouvillian.hpp"

namespace damped_qubit {

/// Thrown for malformed sweep specifications; the CLI maps it to a usage error.
class SpecError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

enum class Quantity { CoherenceL1, K3, KPlus, KMinus, Witness, Correlation, TauQPlus, TauQMinus, TauC };

inline constexpr std::array<std::pair<Quantity, std::string_view>, 9> kQuantityNames{{
    {Quantity::CoherenceL1, "C_l1"},
    {Quantity::K3, "K3"},
    {Quantity::KPlus, "K_plus"},
    {Quantity::KMinus, "K_minus"},
    {Quantity::Witness, "W_q"},
    {Quantity::Correlation, "correlation"},
    {Quantity::TauQPlus, "tau_q_plus"},
    {Quantity::TauQMinus, "tau_q_minus"},
    {Quantity::TauC, "tau_c"},
}};

inline std::string_view to_string(Quantity q) {
  for (const auto &[k, name] : kQuantityNames)
    if (k == q) return name;
  return "?";
}

inline Quantity parse_quantity(std::string_view name) {
  for (const auto &[k, n] : kQuantityNames)
    if (n == name) return k;
  throw SpecError("unknown quantity '" + std::string(name) + "'");
}

inline bool is_temperature_quantity(Quantity q) {
  return q == Quantity::TauQPlus || q == Quantity::TauQMinus || q == Quantity::TauC;
}

/// Parses a comma separated quantity list, keeping the given order.
inline std::vector<Quantity> parse_quantities(std::string_view list) {
  std::vector<Quantity> out;
  std::size_t pos = 0;
  while (pos <= list.size()) {
    const std::size_t comma = std::min(list.find(',', pos), list.size());
    std::string_view item = list.substr(pos, comma - pos);
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    if (!item.empty()) {
      const Quantity q = parse_quantity(item);
      if (std::find(out.begin(), out.end(), q) == out.end()) out.push_back(q);
    }
    pos = comma + 1;
  }
  return out;
}

struct Grid {
  double start = 0.0;
  double stop = 1.0;
  std::size_t count = 2;

  /// Evenly spaced points; the last one is exactly `stop`.
  std::vector<double> points() const {
    std::vector<double> v(count);
    const double span = stop - start;
    for (std::size_t i = 0; i < count; ++i)
      v[i] = i + 1 == count ? stop : start + span * static_cast<double>(i) / static_cast<double>(count - 1);
    return v;
  }
};

namespace detail {

inline double parse_double(std::string_view s, std::string_view what) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(v))
    throw SpecError(std::string(what) + ": '" + std::string(s) + "' is not a finite number");
  return v;
}

} // namespace detail

/// Parses `lo:hi:n`.
inline Grid parse_grid(std::string_view text, std::string_view what = "range") {
  const auto c1 = text.find(':');
  const auto c2 = c1 == std::string_view::npos ? c1 : text.find(':', c1 + 1);
  if (c2 == std::string_view::npos || text.find(':', c2 + 1) != std::string_view::npos)
    throw SpecError(std::string(what) + ": expected lo:hi:n, got '" + std::string(text) + "'");
  Grid g;
  g.start = detail::parse_double(text.substr(0, c1), what);
  g.stop = detail::parse_double(text.substr(c1 + 1, c2 - c1 - 1), what);
  const std::string_view n = text.substr(c2 + 1);
  std::size_t count = 0;
  const auto [ptr, ec] = std::from_chars(n.data(), n.data() + n.size(), count);
  if (ec != std::errc{} || ptr != n.data() + n.size())
    throw SpecError(std::string(what) + ": '" + std::string(n) + "' is not a point count");
  g.count = count;
  return g;
}

enum class SweepMode { TimeSeries, TemperatureSweep };

struct SweepSpec {
  SweepMode mode = SweepMode::TimeSeries;
  double omega = 1.0;
  double gamma0 = 0.0;
  double temperature = 0.0; // time series only
  Grid grid;                // tau grid, or temperature grid
  std::vector<Quantity> quantities;

  /// Throws SpecError when the spec is unusable.
  void validate() const {
    if (!(omega > 0.0)) throw SpecError("omega must be positive");
    if (!(gamma0 >= 0.0)) throw SpecError("gamma0 must be non-negative");
    if (!(temperature >= 0.0)) throw SpecError("temperature must be non-negative");
    if (grid.count < 2) throw SpecError("grid needs at least 2 points");
    if (!(grid.start < grid.stop)) throw SpecError("grid start must be below grid stop");
    if (!(grid.start >= 0.0)) throw SpecError("grid start must be non-negative");
    if (quantities.empty()) throw SpecError("no quantities requested");
    for (Quantity q : quantities) {
      if (mode == SweepMode::TemperatureSweep && !is_temperature_quantity(q))
        throw SpecError("quantity '" + std::string(to_string(q)) + "' is not available in a temperature sweep");
      if (mode == SweepMode::TimeSeries && is_temperature_quantity(q))
        throw SpecError("quantity '" + std::string(to_string(q)) + "' is only available in a temperature sweep");
    }
  }
};

struct SweepOutput {
  std::string csv;
  std::vector<std::string> failed_checks; // empty when every cross-check held
  bool ok() const { return failed_checks.empty(); }
};

/// Tolerance for the in-run agreement checks between formulations.
inline constexpr double kCrossCheckTolerance = 1e-10;

/// 15 significant digits, shortest general form, `inf` for unbounded values.
inline std::string format_value(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::general, 15);
  return {buf.data(), res.ptr};
}

inline std::string format_value(const Timescale &t) {
  return t.bounded() ? format_value(t.value()) : std::string("inf");
}

/**
 * @brief Evaluates fn(i) for i in [0, n) on up to `threads` workers.
 *
 * Results land at their index, so the output order never depends on the
 * schedule.
 */
template <class T>
std::vector<T> parallel_map(std::size_t n, const std::function<T(std::size_t)> &fn, unsigned threads = 0) {
  std::vector<T> out(n);
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) out[i] = fn(i);
    return out;
  }
  std::vector<std::exception_ptr> errors(threads);
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < threads; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (std::size_t i = w; i < n; i += threads) out[i] = fn(i);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
  }
  for (auto &e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

namespace detail {

struct SeriesRow {
  std::vector<double> values;
  std::vector<std::string> failures;
};

inline SeriesRow series_row(const SystemParams &p, double tau, const std::vector<Quantity> &quantities) {
  SeriesRow row;
  row.values.reserve(quantities.size());
  for (Quantity q : quantities) {
    switch (q) {
    case Quantity::CoherenceL1: {
      const double c = coherence_l1(evolve_expectations(p, maximally_coherent_state(), tau));
      if (std::abs(c - coherence_envelope(p, tau)) > kCrossCheckTolerance)
        row.failures.push_back("C_l1 disagrees with exp(-gamma tau/2) at tau=" + format_value(tau));
      row.values.push_back(c);
      break;
    }
    case Quantity::K3: row.values.push_back(k3(p, tau)); break;
    case Quantity::KPlus: row.values.push_back(k_pm(p, tau, LgSign::Plus)); break;
    case Quantity::KMinus: row.values.push_back(k_pm(p, tau, LgSign::Minus)); break;
    case Quantity::Witness: {
      const WitnessResult w = witness(p, tau);
      if (w.max_discrepancy() > kCrossCheckTolerance)
        row.failures.push_back("witness formulations disagree at tau=" + format_value(tau));
      row.values.push_back(w.w_analytic);
      break;
    }
    case Quantity::Correlation: row.values.push_back(correlation_analytic(p, tau)); break;
    default: throw SpecError("quantity not available in a time series");
    }
  }
  return row;
}

inline std::string header(std::string_view first, const std::vector<Quantity> &quantities) {
  std::string h(first);
  for (Quantity q : quantities) {
    h += ',';
    h += to_string(q);
  }
  h += '\n';
  return h;
}

} // namespace detail

/// One row per tau with the requested quantities for the |+> preparation.
inline SweepOutput run_time_series(const SweepSpec &spec, unsigned threads = 0) {
  if (spec.mode != SweepMode::TimeSeries) throw SpecError("run_time_series: spec is not in time-series mode");
  spec.validate();
  const SystemParams p = derive_params(spec.omega, spec.gamma0, spec.temperature);
  const std::vector<double> taus = spec.grid.points();

  const auto rows = parallel_map<detail::SeriesRow>(
      taus.size(), [&](std::size_t i) { return detail::series_row(p, taus[i], spec.quantities); }, threads);

  SweepOutput out;
  out.csv = detail::header("tau", spec.quantities);
  for (std::size_t i = 0; i < taus.size(); ++i) {
    out.csv += format_value(taus[i]);
    for (double v : rows[i].values) {
      out.csv += ',';
      out.csv += format_value(v);
    }
    out.csv += '\n';
    out.failed_checks.insert(out.failed_checks.end(), rows[i].failures.begin(), rows[i].failures.end());
  }
  return out;
}

/// One row per temperature: quantum times and the coherence half-life.
inline SweepOutput run_temperature_sweep(const SweepSpec &spec, unsigned threads = 0) {
  if (spec.mode != SweepMode::TemperatureSweep)
    throw SpecError("run_temperature_sweep: spec is not in temperature-sweep mode");
  spec.validate();
  const std::vector<double> temps = spec.grid.points();

  const auto rows = parallel_map<std::vector<std::string>>(
      temps.size(),
      [&](std::size_t i) {
        const SystemParams p = derive_params(spec.omega, spec.gamma0, temps[i]);
        std::vector<std::string> cells;
        for (Quantity q : spec.quantities) {
          switch (q) {
          case Quantity::TauQPlus: cells.push_back(format_value(quantum_time(p, LgSign::Plus).value)); break;
          case Quantity::TauQMinus: cells.push_back(format_value(quantum_time(p, LgSign::Minus).value)); break;
          case Quantity::TauC: cells.push_back(format_value(p.tau_halflife)); break;
          default: throw SpecError("quantity not available in a temperature sweep");
          }
        }
        return cells;
      },
      threads);

  SweepOutput out;
  out.csv = detail::header("T", spec.quantities);
  for (std::size_t i = 0; i < temps.size(); ++i) {
    out.csv += format_value(temps[i]);
    for (const auto &cell : rows[i]) {
      out.csv += ',';
      out.csv += cell;
    }
    out.csv += '\n';
  }
  return out;
}

inline SweepOutput run_sweep(const SweepSpec &spec, unsigned threads = 0) {
  return spec.mode == SweepMode::TimeSeries ? run_time_series(spec, threads) : run_temperature_sweep(spec, threads);
}

} // namespace damped_qubit
