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

// Collision and wall relaxation rates of 87Rb in a spherical vapor cell with
// He and N2 buffer gas. All quantities are CGS; rates are in 1/s.

#pragma once

#include <stdexcept>

namespace spinthermo {

namespace cgs {
inline constexpr double kBoltzmann = 1.380649e-16;         // erg/K
inline constexpr double kAtomicMassUnit = 1.66053906660e-24;  // g
inline constexpr double kTorr = 1333.2236842105263;          // dyn/cm^2
inline constexpr double kZeroCelsius = 273.15;               // K
inline constexpr double kAtmosphereTorr = 760.0;
}  // namespace cgs

namespace mass_amu {
inline constexpr double kRb87 = 86.909180527;
inline constexpr double kHe4 = 4.002602;
inline constexpr double kN2 = 28.0134;
}  // namespace mass_amu

struct CellConfig {
  double radius_cm = 1.5;
  double temperature_c = 120.0;
  double p_he_torr = 200.0;
  double p_n2_torr = 75.0;

  double temperature_k() const { return temperature_c + cgs::kZeroCelsius; }

  /// Throws std::invalid_argument on a nonpositive radius, negative pressure or
  /// a temperature outside [20, 200] C.
  void validate() const;
};

struct CrossSections {
  double sigma_se = 1.9e-14;         // cm^2
  double sigma_sd_rb_rb = 9.0e-18;   // cm^2
  double sigma_sd_rb_he = 8.7e-24;   // cm^2
  double sigma_sd_rb_n2 = 1.0e-22;   // cm^2

  void validate() const;
};

struct RateModelOptions {
  double d0_he = 0.35;  ///< Rb-He diffusion coefficient at 273.15 K, 1 atm, cm^2/s
  double d0_n2 = 0.16;  ///< Rb-N2 diffusion coefficient at 273.15 K, 1 atm, cm^2/s
  bool include_wall = true;
  /// Multiply D0 by (T/T0)^(3/2).
  bool scale_diffusion_with_temperature = false;
  /// Evaluate the Amagat density at the cell temperature instead of T0.
  bool amagat_at_cell_temperature = false;
};

struct RateSet {
  double n_rb = 0.0;            // cm^-3
  double gamma_se = 0.0;        // 1/s
  double gamma_sd_rb_rb = 0.0;  // 1/s
  double gamma_sd_rb_he = 0.0;  // 1/s
  double gamma_sd_rb_n2 = 0.0;  // 1/s
  double gamma_wall = 0.0;      // 1/s
  double gamma_sd_total = 0.0;  // 1/s
  double d_eff = 0.0;           // cm^2/s
};

class UnconfinedCellError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Saturated Rb vapor pressure in Torr (solid below 312.46 K, liquid above).
double rb_vapor_pressure_torr(double temperature_k);

/// Saturated Rb number density in cm^-3 for a temperature in Celsius.
double rb_number_density(double temperature_c);

/// sqrt(8 k_B T / (pi mu)) in cm/s with reduced mass mu.
double mean_relative_velocity(double temperature_k, double m1_amu, double m2_amu);

/// Ideal-gas number density in cm^-3.
double gas_number_density(double pressure_torr, double temperature_k);

/// Density in Amagat: 1 at 760 Torr and 273.15 K.
double amagat(double pressure_torr, double temperature_k);

double gamma_se(const CellConfig& cell, const CrossSections& xs = {});

/// D = sum over buffer gases present of D0 / n_amg. Throws UnconfinedCellError
/// when both pressures are zero.
double diffusion_coefficient(const CellConfig& cell, const RateModelOptions& options = {});

/// (pi / R)^2 D for the lowest diffusion mode of a sphere.
double gamma_wall(const CellConfig& cell, double d_eff);

/// Full rate breakdown; gamma_sd_total is the sum of the four channels.
RateSet gamma_sd_total(const CellConfig& cell, const CrossSections& xs = {},
                       const RateModelOptions& options = {});

}  // namespace spinthermo
