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


#include <doctest.h>

#include <cmath>
#include <numbers>

#include "spinthermo/cell_rates.hpp"

using namespace spinthermo;

namespace {

// SI re-derivation of the collision rates.
namespace si {
constexpr double kB = 1.380649e-23;        // J/K
constexpr double amu = 1.66053906660e-27;  // kg
constexpr double torr = 101325.0 / 760.0;  // Pa

double velocity(double t, double m1, double m2) {
  const double mu = m1 * m2 / (m1 + m2) * amu;
  return std::sqrt(8.0 * kB * t / (std::numbers::pi * mu));  // m/s
}

double density(double p_torr, double t) { return p_torr * torr / (kB * t); }  // m^-3

double rate(double n, double v, double sigma_cm2) { return n * v * sigma_cm2 * 1e-4; }
}  // namespace si

constexpr double kT = 393.15;

}  // namespace

TEST_SUITE("cell_rates") {

TEST_CASE("vapor pressure and density") {
  CHECK(rb_number_density(121.0) > rb_number_density(120.0));
  CHECK(rb_number_density(30.0) < rb_number_density(120.0));
  // Continuity at the melting point.
  CHECK(rb_vapor_pressure_torr(312.45) == doctest::Approx(rb_vapor_pressure_torr(312.47)).epsilon(0.01));
  CHECK_THROWS_AS(rb_number_density(10.0), std::invalid_argument);
  CHECK_THROWS_AS(rb_number_density(250.0), std::invalid_argument);
}

TEST_CASE("density agrees with the value implied by the spin-exchange anchor") {
  const double v = si::velocity(kT, mass_amu::kRb87, mass_amu::kRb87) * 100.0;  // cm/s
  const double implied = 14.0e3 / (v * 1.9e-14);
  CHECK(rb_number_density(120.0) == doctest::Approx(implied).epsilon(0.2));
}

TEST_CASE("mean relative velocity") {
  const double m = mass_amu::kRb87 * cgs::kAtomicMassUnit;
  CHECK(mean_relative_velocity(kT, mass_amu::kRb87, mass_amu::kRb87) ==
        doctest::Approx(std::sqrt(16.0 * cgs::kBoltzmann * kT / (std::numbers::pi * m))).epsilon(1e-13));
  CHECK(mean_relative_velocity(kT, mass_amu::kRb87, 1e12) ==
        doctest::Approx(std::sqrt(8.0 * cgs::kBoltzmann * kT / (std::numbers::pi * m))).epsilon(1e-9));
  const double v_he = mean_relative_velocity(kT, mass_amu::kRb87, mass_amu::kHe4);
  CHECK(v_he == doctest::Approx(si::velocity(kT, mass_amu::kRb87, mass_amu::kHe4) * 100.0).epsilon(1e-12));
  CHECK(v_he == doctest::Approx(1.4e5).epsilon(0.1));
}

TEST_CASE("Amagat units") {
  CHECK(amagat(760.0, 273.15) == doctest::Approx(1.0));
  CHECK(amagat(380.0, 546.3) == doctest::Approx(0.25));
}

TEST_CASE("spin-exchange rate") {
  const CellConfig cell;
  const double g = gamma_se(cell);
  CHECK(g == doctest::Approx(14.0e3).epsilon(0.2));
  CrossSections xs;
  xs.sigma_se *= 2.0;
  CHECK(gamma_se(cell, xs) == doctest::Approx(2.0 * g).epsilon(1e-14));
  CellConfig other = cell;
  other.radius_cm = 0.1;
  other.p_he_torr = 10.0;
  other.p_n2_torr = 0.0;
  CHECK(gamma_se(other) == g);
}

TEST_CASE("CGS rates agree with an SI evaluation") {
  const CellConfig cell;
  const CrossSections xs;
  const RateSet r = gamma_sd_total(cell, xs);
  const double n_rb = r.n_rb * 1e6;  // m^-3
  const double v_rbrb = si::velocity(kT, mass_amu::kRb87, mass_amu::kRb87);
  CHECK(r.gamma_se == doctest::Approx(si::rate(n_rb, v_rbrb, xs.sigma_se)).epsilon(1e-10));
  CHECK(r.gamma_sd_rb_rb == doctest::Approx(si::rate(n_rb, v_rbrb, xs.sigma_sd_rb_rb)).epsilon(1e-10));
  CHECK(r.gamma_sd_rb_he ==
        doctest::Approx(si::rate(si::density(200.0, kT), si::velocity(kT, mass_amu::kRb87, mass_amu::kHe4),
                                 xs.sigma_sd_rb_he))
            .epsilon(1e-10));
  CHECK(r.gamma_sd_rb_n2 ==
        doctest::Approx(si::rate(si::density(75.0, kT), si::velocity(kT, mass_amu::kRb87, mass_amu::kN2),
                                 xs.sigma_sd_rb_n2))
            .epsilon(1e-10));
  const double d_si = (0.35e-4 / (200.0 / 760.0) + 0.16e-4 / (75.0 / 760.0));  // m^2/s
  const double k = std::numbers::pi / 0.015;
  CHECK(r.gamma_wall == doctest::Approx(k * k * d_si).epsilon(1e-10));
}

TEST_CASE("spin-destruction anchors") {
  const RateSet r = gamma_sd_total(CellConfig{});
  CHECK(r.gamma_sd_total == doctest::Approx(30.0).epsilon(0.5));
  CHECK(r.gamma_se / r.gamma_sd_total > 100.0);
  CHECK(r.gamma_sd_total ==
        doctest::Approx(r.gamma_sd_rb_rb + r.gamma_sd_rb_he + r.gamma_sd_rb_n2 + r.gamma_wall)
            .epsilon(1e-15));

  CellConfig small;
  small.radius_cm = 0.01;
  CellConfig large;
  large.radius_cm = 2.5;
  const double g_small = gamma_sd_total(small).gamma_sd_total;
  const double g_large = gamma_sd_total(large).gamma_sd_total;
  CHECK(g_small / 290.0e3 < 3.0);
  CHECK(290.0e3 / g_small < 3.0);
  CHECK(g_large / 21.0 < 3.0);
  CHECK(21.0 / g_large < 3.0);

  double previous = std::numeric_limits<double>::infinity();
  for (double radius : {0.01, 0.05, 0.1, 0.5, 1.0, 2.5}) {
    CellConfig c;
    c.radius_cm = radius;
    const double g = gamma_sd_total(c).gamma_sd_total;
    CHECK(g < previous);
    previous = g;
  }
}

TEST_CASE("wall relaxation scaling") {
  CellConfig cell;
  const double d = diffusion_coefficient(cell);
  const double g = gamma_wall(cell, d);
  cell.radius_cm *= 0.5;
  CHECK(gamma_wall(cell, d) == doctest::Approx(4.0 * g).epsilon(1e-14));
  CHECK_THROWS_AS(gamma_wall(cell, 0.0), std::invalid_argument);
  cell.radius_cm = 0.0;
  CHECK_THROWS_AS(gamma_wall(cell, d), std::invalid_argument);
}

TEST_CASE("diffusion coefficient") {
  CellConfig cell;
  const double d = diffusion_coefficient(cell);
  CHECK(d == doctest::Approx(0.35 / (200.0 / 760.0) + 0.16 / (75.0 / 760.0)).epsilon(1e-14));
  CellConfig doubled = cell;
  doubled.p_he_torr *= 2.0;
  doubled.p_n2_torr *= 2.0;
  CHECK(diffusion_coefficient(doubled) == doctest::Approx(0.5 * d).epsilon(1e-14));

  CellConfig he_only = cell;
  he_only.p_n2_torr = 0.0;
  CHECK(diffusion_coefficient(he_only) == doctest::Approx(0.35 / (200.0 / 760.0)));

  RateModelOptions scaled;
  scaled.scale_diffusion_with_temperature = true;
  CHECK(diffusion_coefficient(cell, scaled) ==
        doctest::Approx(d * std::pow(393.15 / 273.15, 1.5)).epsilon(1e-12));
  RateModelOptions hot_amagat;
  hot_amagat.amagat_at_cell_temperature = true;
  CHECK(diffusion_coefficient(cell, hot_amagat) == doctest::Approx(d * 393.15 / 273.15).epsilon(1e-12));
}

TEST_CASE("no buffer gas") {
  CellConfig cell;
  cell.p_he_torr = 0.0;
  cell.p_n2_torr = 0.0;
  CHECK_THROWS_AS(diffusion_coefficient(cell), UnconfinedCellError);
  CHECK_THROWS_AS(gamma_sd_total(cell), UnconfinedCellError);

  cell.radius_cm = 1e6;
  RateModelOptions no_wall;
  no_wall.include_wall = false;
  const RateSet r = gamma_sd_total(cell, {}, no_wall);
  CHECK(r.gamma_sd_total == r.gamma_sd_rb_rb);
  CHECK(r.gamma_wall == 0.0);
}

TEST_CASE("input validation") {
  CellConfig cell;
  cell.temperature_c = 300.0;
  CHECK_THROWS_AS(gamma_se(cell), std::invalid_argument);
  CrossSections xs;
  xs.sigma_se = -1.0;
  CHECK_THROWS_AS(gamma_sd_total(CellConfig{}, xs), std::invalid_argument);
}

}  // TEST_SUITE
