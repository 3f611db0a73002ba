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

// Quantum Fisher information of a spin state for rotations generated by
// F_x, F_y, F_z, and the resource-based views of a trajectory: QFI against
// polarization efficiency and against entropy production.

#pragma once

#include <array>
#include <stdexcept>
#include <vector>

#include "spinthermo/linalg.hpp"
#include "spinthermo/thermo.hpp"

namespace spinthermo {

struct QfiSample {
  double t = 0.0;
  std::array<double, 3> qfi{};  ///< generators F_x, F_y, F_z
  std::array<double, 3> crb{};  ///< qfi^(-1/2), +inf when qfi vanishes
};

/// Relative floor on lambda_i + lambda_j, scaled by Tr rho.
inline constexpr double kQfiPairFloor = 1e-12;

/// F_Q = 2 sum_{ij} (l_i - l_j)^2 / (l_i + l_j) |<i|G|j>|^2 over pairs with
/// l_i + l_j above the floor.
double qfi(const Matrix& rho, const Matrix& generator);

/// 4 (<G^2> - <G>^2); equals qfi() for pure states and bounds it otherwise.
double variance_bound(const Matrix& rho, const Matrix& generator);

/// qfi^(-1/2); +infinity when qfi <= kQfiPairFloor.
double cramer_rao_bound(double qfi_value);

QfiSample qfi_sample(double t, const Matrix& rho, const std::array<Matrix, 3>& generators);

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  std::size_t points = 0;
};

/// Ordinary least squares y = slope x + intercept.
LinearFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

struct ResourcePoint {
  double abscissa = 0.0;
  std::array<double, 3> qfi{};
};

struct Reparametrization {
  std::vector<ResourcePoint> by_efficiency;           ///< sorted by R
  std::vector<ResourcePoint> by_entropy_production;   ///< sorted by Sigma
  std::array<LinearFit, 3> sigma_fit;                 ///< QFI_k against Sigma
};

class TimeGridMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Pairs thermodynamic and QFI samples taken at the same times. The Sigma
/// fits use only samples with Sigma above 1% of its final value.
Reparametrization reparametrize(const std::vector<ThermoSample>& thermo,
                                const std::vector<QfiSample>& qfi_samples);

/// Divided second differences of y(x) over the upper half of the x range.
/// Points are thinned so consecutive abscissae differ by at least
/// range / resolution, which keeps the near-stationary tail out of the noise.
std::vector<double> upper_half_second_differences(const std::vector<ResourcePoint>& series,
                                                  std::size_t component,
                                                  std::size_t resolution = 100);

}  // namespace spinthermo
