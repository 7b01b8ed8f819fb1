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

// damped_qubit: indicator sweeps as CSV, and the cross-validation driver.
//
//   damped_qubit series --omega 1 --gamma0 0.04 --tau-range 0:25.13:801 --quantities W_q,C_l1
//   damped_qubit tsweep --omega 20 --gamma0 0.01 --t-range 0:100:51
//   damped_qubit check
//
// Exit codes: 0 success, 1xx command-line error (CLI11), 2 invalid sweep spec,
// 3 an internal cross-check failed, 4 output file could not be written.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "damped_qubit/damped_qubit.hpp"
#include "damped_qubit/validation.hpp"

namespace dq = damped_qubit;

namespace {

struct Options {
  double omega = 1.0;
  double gamma0 = 0.0;
  double temperature = 0.0;
  std::string tau_range = "0:25.132741228718345:801"; // four Larmor periods at omega = 1
  std::string t_range = "0:100:51";
  std::string quantities;
  std::string output = "stdout";
};

int write_output(const std::string &text, const std::string &target) {
  if (target == "stdout" || target == "-") {
    std::cout << text << std::flush;
    return 0;
  }
  std::ofstream f(target, std::ios::binary);
  f << text;
  if (!f) {
    std::cerr << "error: cannot write " << target << "\n";
    return 4;
  }
  return 0;
}

int run_sweep(const Options &opt, dq::SweepMode mode) {
  dq::SweepSpec spec;
  try {
    spec.mode = mode;
    spec.omega = opt.omega;
    spec.gamma0 = opt.gamma0;
    spec.temperature = opt.temperature;
    if (mode == dq::SweepMode::TimeSeries) {
      spec.grid = dq::parse_grid(opt.tau_range, "--tau-range");
      spec.quantities = dq::parse_quantities(opt.quantities.empty() ? "C_l1,K_plus,K_minus,W_q" : opt.quantities);
    } else {
      spec.grid = dq::parse_grid(opt.t_range, "--t-range");
      spec.quantities = dq::parse_quantities(opt.quantities.empty() ? "tau_q_plus,tau_q_minus,tau_c" : opt.quantities);
    }
    spec.validate();
  } catch (const dq::SpecError &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  const dq::SweepOutput out = dq::run_sweep(spec);
  if (const int rc = write_output(out.csv, opt.output); rc != 0) return rc;
  for (const auto &f : out.failed_checks) std::cerr << "cross-check failed: " << f << "\n";
  return out.ok() ? 0 : 3;
}

int run_check() {
  bool all = true;
  for (const auto &r : dq::validation::run_all()) {
    std::printf("[%s] %2d %s: %s\n", r.passed ? "PASS" : "FAIL", r.id, r.name.c_str(), r.detail.c_str());
    all = all && r.passed;
  }
  std::printf("%s\n", all ? "all checks passed" : "some checks FAILED");
  return all ? 0 : 3;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Damped two-level system: coherence, Leggett-Garg and no-signaling-in-time indicators"};
  app.require_subcommand(1);
  app.set_config("--config", "", "Key-value configuration file (flags override it)");

  Options opt;
  app.add_option("--omega", opt.omega, "Level splitting (angular frequency)")->capture_default_str();
  app.add_option("--gamma0", opt.gamma0, "Spontaneous decay rate")->capture_default_str();
  auto *temp = app.add_option("--temperature", opt.temperature, "Reservoir temperature (k_B = 1)")->capture_default_str();
  app.add_option("--t-range", opt.t_range, "Temperature grid lo:hi:n (tsweep)")->capture_default_str()->excludes(temp);
  app.add_option("--tau-range", opt.tau_range, "Lag grid lo:hi:n (series)")->capture_default_str();
  app.add_option("--quantities", opt.quantities,
                 "Comma list of C_l1,K3,K_plus,K_minus,W_q,correlation (series) or tau_q_plus,tau_q_minus,tau_c (tsweep)");
  app.add_option("--output", opt.output, "Output file, or stdout")->capture_default_str();

  auto *series = app.add_subcommand("series", "Indicators on a grid of measurement lags");
  auto *tsweep = app.add_subcommand("tsweep", "Quantum times and coherence half-life over temperature");
  auto *check = app.add_subcommand("check", "Run the cross-validation suite");
  for (auto *sub : {series, tsweep, check}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    return app.exit(e);
  }

  if (*series) return run_sweep(opt, dq::SweepMode::TimeSeries);
  if (*tsweep) return run_sweep(opt, dq::SweepMode::TemperatureSweep);
  if (*check) return run_check();
  return 1;
}
