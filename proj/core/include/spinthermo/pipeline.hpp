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

// Experiment orchestration: cell rates -> master equation -> observables,
// CSV persistence, parameter sweeps and the figure recipes.

#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "spinthermo/cell_rates.hpp"
#include "spinthermo/config.hpp"
#include "spinthermo/dynamics.hpp"
#include "spinthermo/metrology.hpp"
#include "spinthermo/spin_algebra.hpp"
#include "spinthermo/thermo.hpp"

namespace spinthermo {

/// Everything recorded for one trajectory sample.
struct ObservableSample {
  ThermoSample thermo;
  QfiSample qfi;
  std::array<double, 3> F{};
  std::array<double, 3> S{};
  RealVector populations;
};

/// Least-squares fit of ln p(m_F) = a + beta m_F over all coupled levels.
struct SpinTemperatureFit {
  double beta = 0.0;
  double relative_residual = 0.0;  ///< ||p - p_fit||_2 / ||p||_2
  double off_diagonal_mass = 0.0;  ///< sum of |rho_ij|, i != j
};

SpinTemperatureFit fit_spin_temperature(const Matrix& rho, const SpinOperatorSet& ops);

std::vector<ObservableSample> analyze_trajectory(const Trajectory& traj, const PumpParams& params,
                                                 const SpinOperatorSet& ops);

struct Summary {
  bool reached_ness = false;
  double t_final = 0.0;
  double t_final_norm = 0.0;
  ObservableSample final;
  SpinTemperatureFit spin_temperature;
};

struct RunResult {
  RunConfig config;
  RateSet rates;
  PumpParams params;
  SpinOperatorSet ops;
  Trajectory trajectory;
  std::vector<ObservableSample> samples;
  Summary summary;
};

/// Maps a config onto master-equation parameters: G_SE and G_SD from the cell
/// model, R_op and A_hfs as multiples of G_SE.
PumpParams pump_params(const RunConfig& config, const RateSet& rates);

/// Runs the full pipeline in memory. Throws IntegrationError on invariant
/// violations.
RunResult simulate(const RunConfig& config);

// CSV schema. Headers are fixed; population columns depend on the basis.
std::vector<std::string> rates_header();
std::vector<std::string> trajectory_header(const SpinOperatorSet& ops);
std::vector<std::string> summary_header(const SpinOperatorSet& ops);
std::vector<double> summary_row(const RunResult& result);

void write_rates_csv(const std::filesystem::path& path, const RateSet& rates);
void write_trajectory_csv(const std::filesystem::path& path, const RunResult& result);
void write_summary_csv(const std::filesystem::path& path, const RunResult& result);

/// simulate() + rates.csv, trajectory.csv and summary.csv in out_dir.
RunResult run(const RunConfig& config, const std::filesystem::path& out_dir);

struct SweepPointOutcome {
  double value = 0.0;
  bool ok = false;
  std::string error;
  std::vector<double> summary;
};

struct SweepOutcome {
  std::vector<SweepPointOutcome> points;  ///< ordered by swept value
  std::size_t failures = 0;
};

/// Runs every sweep point (in parallel when jobs > 1), writes one
/// subdirectory per point and aggregate.csv ordered by swept value. Failed
/// points are recorded and the sweep continues.
SweepOutcome sweep(const SweepSpec& spec, const std::filesystem::path& out_dir, unsigned jobs = 1);

struct FigureFile {
  std::string file;
  std::string panel;
  std::string description;
  std::string config;
};

/// Writes fig*.csv plus manifest.csv into out_dir and returns the manifest.
std::vector<FigureFile> reproduce_figures(const std::filesystem::path& out_dir, unsigned jobs = 1);

/// Runs fn(i) for i in [0, n) on up to `jobs` threads.
void parallel_for(std::size_t n, unsigned jobs, const std::function<void(std::size_t)>& fn);

/// 12 significant digits, the precision used by every CSV writer.
std::string format_number(double value);

}  // namespace spinthermo
