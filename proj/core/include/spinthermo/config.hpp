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

// Run and sweep configuration. The file format is one `key = value` pair per
// line; `#` starts a comment. Every key is optional; see README.md for the
// full key list and defaults.

#pragma once

#include <cstddef>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "spinthermo/cell_rates.hpp"

namespace spinthermo {

enum class Axis { x = 0, y = 1, z = 2 };

struct RunConfig {
  CellConfig cell;
  CrossSections cross_sections;
  RateModelOptions rate_model;
  double nuclear_spin = 1.5;
  Axis pump_axis = Axis::z;
  double s_magnitude = 0.5;
  double r_op_over_gamma_se = 1.0;
  double a_hfs_over_gamma_se = 100.0;
  double t_end_over_t_se = 200.0;  ///< horizon; runs stop earlier at the NESS when stop_at_ness
  double dt_over_t_se = 0.0;       ///< 0 selects the default step rule
  std::size_t sample_every = 250;  ///< integrator steps between samples
  double ness_tol = 1e-7;
  bool stop_at_ness = true;
  std::string output = "out";

  /// Throws ConfigError naming the offending field.
  void validate() const;
};

enum class SweepVariable { s, r_op, radius };

struct SweepSpec {
  SweepVariable variable = SweepVariable::s;
  std::vector<double> values;
  RunConfig base;

  void validate() const;
  /// Copy of base with the swept field set to values[i].
  RunConfig point(std::size_t i) const;
};

class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& what, std::string field, std::size_t line = 0)
      : std::runtime_error(what), field_(std::move(field)), line_(line) {}

  const std::string& field() const { return field_; }
  std::size_t line() const { return line_; }  ///< 1-based, 0 when not tied to a line

 private:
  std::string field_;
  std::size_t line_;
};

RunConfig parse_config_text(const std::string& text);
RunConfig parse_config(const std::filesystem::path& path);

/// Reads the run keys plus `sweep.variable` and `sweep.values`.
SweepSpec parse_sweep_text(const std::string& text);
SweepSpec parse_sweep(const std::filesystem::path& path);

std::string to_string(Axis axis);
std::string to_string(SweepVariable variable);

/// `key = value` lines reproducing the physics fields of a config.
std::string describe(const RunConfig& config);

}  // namespace spinthermo
