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

#include <string>

#include "spinthermo/config.hpp"

using namespace spinthermo;

TEST_SUITE("config") {

TEST_CASE("empty text yields the default cell and pump") {
  const RunConfig c = parse_config_text("");
  CHECK(c.cell.radius_cm == 1.5);
  CHECK(c.cell.temperature_c == 120.0);
  CHECK(c.cell.p_he_torr == 200.0);
  CHECK(c.cell.p_n2_torr == 75.0);
  CHECK(c.s_magnitude == 0.5);
  CHECK(c.r_op_over_gamma_se == 1.0);
  CHECK(c.a_hfs_over_gamma_se == 100.0);
  CHECK(c.pump_axis == Axis::z);
  CHECK(parse_config_text("# only a comment\n\n   \n").s_magnitude == 0.5);
}

TEST_CASE("keys, comments and whitespace") {
  const RunConfig c = parse_config_text(
      "radius_cm = 0.5   # smaller cell\n"
      "  pump_axis=x\n"
      "s_magnitude = 0.75\n"
      "stop_at_ness = false\n"
      "sample_every = 10\n"
      "d0_he = 0.4\n"
      "output = runs/a\n");
  CHECK(c.cell.radius_cm == 0.5);
  CHECK(c.pump_axis == Axis::x);
  CHECK(c.s_magnitude == 0.75);
  CHECK_FALSE(c.stop_at_ness);
  CHECK(c.sample_every == 10);
  CHECK(c.rate_model.d0_he == 0.4);
  CHECK(c.output == "runs/a");
}

TEST_CASE("validation errors name the field") {
  try {
    parse_config_text("s_magnitude = 1.5\n");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.field() == "s_magnitude");
  }
  try {
    parse_config_text("temperature_c = 500\n");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.field() == "temperature_c");
  }
  CHECK_THROWS_AS(parse_config_text("r_op_over_gamma_se = -1\n"), ConfigError);
  CHECK_THROWS_AS(parse_config_text("nuclear_spin = 1.2\n"), ConfigError);
  CHECK_THROWS_AS(parse_config_text("p_he_torr = 0\np_n2_torr = 0\n"), ConfigError);
}

TEST_CASE("unknown keys and malformed lines") {
  try {
    parse_config_text("radius_cm = 1\nmystery_knob = 3\n");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.field() == "mystery_knob");
    CHECK(e.line() == 2);
    CHECK(std::string(e.what()).find("mystery_knob") != std::string::npos);
  }
  try {
    parse_config_text("\n\nradius_cm 1.5\n");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.line() == 3);
  }
  try {
    parse_config_text("radius_cm = 1.5cm\n");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.line() == 1);
    CHECK(e.field() == "radius_cm");
  }
  CHECK_THROWS_AS(parse_config_text("pump_axis = w\n"), ConfigError);
  CHECK_THROWS_AS(parse_config_text("stop_at_ness = maybe\n"), ConfigError);
  CHECK_THROWS_AS(parse_config_text("sample_every = -3\n"), ConfigError);
  CHECK_THROWS_AS(parse_config(std::filesystem::path("/nonexistent/file.cfg")), ConfigError);
}

TEST_CASE("sweep specifications") {
  const SweepSpec spec = parse_sweep_text(
      "sweep.variable = radius\n"
      "sweep.values = 2.5, 0.5 ,1\n"
      "s_magnitude = 0.25\n");
  CHECK(spec.variable == SweepVariable::radius);
  REQUIRE(spec.values.size() == 3);
  CHECK(spec.values[1] == 0.5);
  CHECK(spec.point(0).cell.radius_cm == 2.5);
  CHECK(spec.point(0).s_magnitude == 0.25);

  CHECK_THROWS_AS(parse_sweep_text("sweep.values = 1\n"), ConfigError);
  CHECK_THROWS_AS(parse_sweep_text("sweep.variable = s\n"), ConfigError);
  CHECK_THROWS_AS(parse_sweep_text("sweep.variable = s\nsweep.values = 0.5, 1.5\n"), ConfigError);
  CHECK_THROWS_AS(parse_sweep_text("sweep.variable = radius\nsweep.values = 0, 1\n"), ConfigError);
  CHECK_THROWS_AS(parse_sweep_text("sweep.variable = color\nsweep.values = 1\n"), ConfigError);
}

TEST_CASE("string forms") {
  CHECK(to_string(Axis::y) == "y");
  CHECK(to_string(SweepVariable::r_op) == "r_op");
  CHECK(describe(RunConfig{}).find("radius_cm=1.5") != std::string::npos);
}

}  // TEST_SUITE
