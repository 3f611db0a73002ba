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

#include "spinthermo/cell_rates.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace spinthermo {

namespace {

constexpr double kRbMeltingPointK = 312.46;
constexpr double kMinTemperatureC = 20.0;
constexpr double kMaxTemperatureC = 200.0;

}  // namespace

void CellConfig::validate() const {
  if (!(radius_cm > 0.0)) throw std::invalid_argument("radius must be positive");
  if (!(temperature_c >= kMinTemperatureC && temperature_c <= kMaxTemperatureC)) {
    throw std::invalid_argument("temperature " + std::to_string(temperature_c) +
                                " C outside the [20, 200] C validity window");
  }
  if (!(p_he_torr >= 0.0) || !(p_n2_torr >= 0.0)) {
    throw std::invalid_argument("buffer-gas pressures must be nonnegative");
  }
}

void CrossSections::validate() const {
  if (!(sigma_se > 0.0 && sigma_sd_rb_rb > 0.0 && sigma_sd_rb_he > 0.0 && sigma_sd_rb_n2 > 0.0)) {
    throw std::invalid_argument("cross sections must be positive");
  }
}

double rb_vapor_pressure_torr(double temperature_k) {
  const double t = temperature_k;
  const double log10_p =
      t < kRbMeltingPointK
          ? -94.04826 - 1961.258 / t - 0.03771687 * t + 42.57526 * std::log10(t)
          : 15.88253 - 4529.635 / t + 0.00058663 * t - 2.99138 * std::log10(t);
  return std::pow(10.0, log10_p);
}

double rb_number_density(double temperature_c) {
  if (!(temperature_c >= kMinTemperatureC && temperature_c <= kMaxTemperatureC)) {
    throw std::invalid_argument("temperature outside the [20, 200] C validity window");
  }
  const double t = temperature_c + cgs::kZeroCelsius;
  return gas_number_density(rb_vapor_pressure_torr(t), t);
}

double mean_relative_velocity(double temperature_k, double m1_amu, double m2_amu) {
  const double mu = m1_amu * m2_amu / (m1_amu + m2_amu) * cgs::kAtomicMassUnit;
  return std::sqrt(8.0 * cgs::kBoltzmann * temperature_k / (std::numbers::pi * mu));
}

double gas_number_density(double pressure_torr, double temperature_k) {
  return pressure_torr * cgs::kTorr / (cgs::kBoltzmann * temperature_k);
}

double amagat(double pressure_torr, double temperature_k) {
  return pressure_torr / cgs::kAtmosphereTorr * (cgs::kZeroCelsius / temperature_k);
}

double gamma_se(const CellConfig& cell, const CrossSections& xs) {
  cell.validate();
  const double t = cell.temperature_k();
  return rb_number_density(cell.temperature_c) *
         mean_relative_velocity(t, mass_amu::kRb87, mass_amu::kRb87) * xs.sigma_se;
}

double diffusion_coefficient(const CellConfig& cell, const RateModelOptions& options) {
  if (!(cell.p_he_torr > 0.0) && !(cell.p_n2_torr > 0.0)) {
    throw UnconfinedCellError("no buffer gas: diffusion to the walls is not defined");
  }
  const double t = cell.temperature_k();
  const double t_amagat = options.amagat_at_cell_temperature ? t : cgs::kZeroCelsius;
  double d = 0.0;
  if (cell.p_he_torr > 0.0) d += options.d0_he / amagat(cell.p_he_torr, t_amagat);
  if (cell.p_n2_torr > 0.0) d += options.d0_n2 / amagat(cell.p_n2_torr, t_amagat);
  if (options.scale_diffusion_with_temperature) d *= std::pow(t / cgs::kZeroCelsius, 1.5);
  return d;
}

double gamma_wall(const CellConfig& cell, double d_eff) {
  if (!(cell.radius_cm > 0.0)) throw std::invalid_argument("radius must be positive");
  if (!(d_eff > 0.0)) throw std::invalid_argument("diffusion coefficient must be positive");
  const double k = std::numbers::pi / cell.radius_cm;
  return k * k * d_eff;
}

RateSet gamma_sd_total(const CellConfig& cell, const CrossSections& xs,
                       const RateModelOptions& options) {
  cell.validate();
  xs.validate();
  const double t = cell.temperature_k();

  RateSet r;
  r.n_rb = rb_number_density(cell.temperature_c);
  const double v_rb_rb = mean_relative_velocity(t, mass_amu::kRb87, mass_amu::kRb87);
  r.gamma_se = r.n_rb * v_rb_rb * xs.sigma_se;
  r.gamma_sd_rb_rb = r.n_rb * v_rb_rb * xs.sigma_sd_rb_rb;
  r.gamma_sd_rb_he = gas_number_density(cell.p_he_torr, t) *
                     mean_relative_velocity(t, mass_amu::kRb87, mass_amu::kHe4) * xs.sigma_sd_rb_he;
  r.gamma_sd_rb_n2 = gas_number_density(cell.p_n2_torr, t) *
                     mean_relative_velocity(t, mass_amu::kRb87, mass_amu::kN2) * xs.sigma_sd_rb_n2;
  if (options.include_wall) {
    r.d_eff = diffusion_coefficient(cell, options);
    r.gamma_wall = gamma_wall(cell, r.d_eff);
  }
  r.gamma_sd_total = r.gamma_sd_rb_rb + r.gamma_sd_rb_n2 + r.gamma_sd_rb_he + r.gamma_wall;
  return r;
}

}  // namespace spinthermo
