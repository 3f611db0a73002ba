// Copyright 2026 The spinthermo Authors
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


#include <cstdio>
#include <exception>
#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "spinthermo/config.hpp"
#include "spinthermo/dynamics.hpp"
#include "spinthermo/pipeline.hpp"

namespace {

enum ExitCode : int {
  kOk = 0,
  kFailure = 1,
  kConfigError = 2,
  kInvariantViolation = 3,
  kPartialSweep = 4,
};

struct Options {
  std::string config;
  std::string out;
  unsigned jobs = 1;
};

spinthermo::RunConfig load_run_config(const Options& o) {
  return o.config.empty() ? spinthermo::parse_config_text("") : spinthermo::parse_config(o.config);
}

std::filesystem::path output_dir(const Options& o, const spinthermo::RunConfig& c) {
  return o.out.empty() ? std::filesystem::path(c.output) : std::filesystem::path(o.out);
}

int cmd_rates(const Options& o) {
  const auto config = load_run_config(o);
  const auto rates =
      spinthermo::gamma_sd_total(config.cell, config.cross_sections, config.rate_model);
  const auto dir = output_dir(o, config);
  spinthermo::write_rates_csv(dir / "rates.csv", rates);
  const auto header = spinthermo::rates_header();
  const double values[] = {rates.n_rb,           rates.gamma_se,       rates.gamma_sd_rb_rb,
                           rates.gamma_sd_rb_he, rates.gamma_sd_rb_n2, rates.gamma_wall,
                           rates.gamma_sd_total, rates.d_eff};
  for (std::size_t i = 0; i < header.size(); ++i) {
    std::cout << header[i] << " = " << spinthermo::format_number(values[i]) << '\n';
  }
  return kOk;
}

int cmd_run(const Options& o) {
  const auto config = load_run_config(o);
  const auto dir = output_dir(o, config);
  const auto result = spinthermo::run(config, dir);
  const auto& f = result.summary.final;
  std::cout << "wrote " << dir.string() << "/{rates,trajectory,summary}.csv\n"
            << "t_final/T_SE = " << spinthermo::format_number(result.summary.t_final_norm)
            << (result.summary.reached_ness ? " (steady state reached)" : " (horizon reached)")
            << "\nefficiency = " << spinthermo::format_number(f.thermo.efficiency)
            << "\nS_vn = " << spinthermo::format_number(f.thermo.S_vn)
            << "\n<Fz> = " << spinthermo::format_number(f.F[2]) << '\n';
  return kOk;
}

int cmd_sweep(const Options& o) {
  if (o.config.empty()) {
    throw spinthermo::ConfigError("sweep requires --config with sweep.variable and sweep.values",
                                  "sweep.variable");
  }
  const auto spec = spinthermo::parse_sweep(o.config);
  const auto dir = output_dir(o, spec.base);
  const auto outcome = spinthermo::sweep(spec, dir, o.jobs);
  for (const auto& p : outcome.points) {
    std::cout << spinthermo::to_string(spec.variable) << " = "
              << spinthermo::format_number(p.value) << ": " << (p.ok ? "ok" : "FAILED " + p.error)
              << '\n';
  }
  std::cout << "wrote " << (dir / "aggregate.csv").string() << '\n';
  return outcome.failures == 0 ? kOk : kPartialSweep;
}

int cmd_figures(const Options& o) {
  const std::filesystem::path dir = o.out.empty() ? "figures" : o.out;
  const auto manifest = spinthermo::reproduce_figures(dir, o.jobs);
  for (const auto& f : manifest) std::cout << (dir / f.file).string() << "  [" << f.panel << "]\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Thermodynamics of optically pumped alkali spins"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&o](CLI::App* sub, bool with_config) {
    if (with_config) sub->add_option("--config", o.config, "key = value config file");
    sub->add_option("--out", o.out, "output directory");
    sub->add_option("--jobs", o.jobs, "parallel workers")->check(CLI::PositiveNumber);
  };
  auto* rates = app.add_subcommand("rates", "compute collision and relaxation rates");
  auto* run = app.add_subcommand("run", "integrate one configuration");
  auto* sweep = app.add_subcommand("sweep", "run a parameter sweep");
  auto* figures = app.add_subcommand("reproduce-figures", "write every figure series");
  add_common(rates, true);
  add_common(run, true);
  add_common(sweep, true);
  add_common(figures, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }

  try {
    if (*rates) return cmd_rates(o);
    if (*run) return cmd_run(o);
    if (*sweep) return cmd_sweep(o);
    if (*figures) return cmd_figures(o);
  } catch (const spinthermo::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const spinthermo::IntegrationError& e) {
    std::cerr << "invariant violation: " << e.what() << '\n';
    return kInvariantViolation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFailure;
  }
  return kFailure;
}
