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

#include "spinthermo/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <iomanip>
#include <map>
#include <sstream>

#include "spinthermo/spin_algebra.hpp"

namespace spinthermo {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return {};
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

double parse_double(const std::string& key, const std::string& value, std::size_t line) {
  double out = 0.0;
  const char* first = value.data();
  const char* last = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(first, last, out);
  if (ec != std::errc() || ptr != last || !std::isfinite(out)) {
    throw ConfigError("line " + std::to_string(line) + ": '" + key + "' expects a number, got '" +
                          value + "'",
                      key, line);
  }
  return out;
}

std::size_t parse_count(const std::string& key, const std::string& value, std::size_t line) {
  std::size_t out = 0;
  const char* last = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(value.data(), last, out);
  if (ec != std::errc() || ptr != last) {
    throw ConfigError("line " + std::to_string(line) + ": '" + key +
                          "' expects a nonnegative integer, got '" + value + "'",
                      key, line);
  }
  return out;
}

bool parse_bool(const std::string& key, const std::string& value, std::size_t line) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  throw ConfigError(
      "line " + std::to_string(line) + ": '" + key + "' expects true or false, got '" + value + "'",
      key, line);
}

using Setter =
    std::function<void(RunConfig&, const std::string&, const std::string&, std::size_t)>;

const std::map<std::string, Setter>& run_setters() {
  static const std::map<std::string, Setter> setters = [] {
    std::map<std::string, Setter> m;
    auto number = [](double RunConfig::*field) {
      return Setter([field](RunConfig& c, const std::string& k, const std::string& v, std::size_t line) {
        c.*field = parse_double(k, v, line);
      });
    };
    auto cell_number = [](double CellConfig::*field) {
      return Setter([field](RunConfig& c, const std::string& k, const std::string& v, std::size_t line) {
        c.cell.*field = parse_double(k, v, line);
      });
    };
    auto xs_number = [](double CrossSections::*field) {
      return Setter([field](RunConfig& c, const std::string& k, const std::string& v, std::size_t line) {
        c.cross_sections.*field = parse_double(k, v, line);
      });
    };
    m["radius_cm"] = cell_number(&CellConfig::radius_cm);
    m["temperature_c"] = cell_number(&CellConfig::temperature_c);
    m["p_he_torr"] = cell_number(&CellConfig::p_he_torr);
    m["p_n2_torr"] = cell_number(&CellConfig::p_n2_torr);
    m["sigma_se"] = xs_number(&CrossSections::sigma_se);
    m["sigma_sd_rb_rb"] = xs_number(&CrossSections::sigma_sd_rb_rb);
    m["sigma_sd_rb_he"] = xs_number(&CrossSections::sigma_sd_rb_he);
    m["sigma_sd_rb_n2"] = xs_number(&CrossSections::sigma_sd_rb_n2);
    m["d0_he"] = [](RunConfig& c, const std::string& k, const std::string& v, std::size_t line) {
      c.rate_model.d0_he = parse_double(k, v, line);
    };
    m["d0_n2"] = [](RunConfig& c, const std::string& k, const std::string& v, std::size_t line) {
      c.rate_model.d0_n2 = parse_double(k, v, line);
    };
    m["scale_diffusion_with_temperature"] = [](RunConfig& c, const std::string& k,
                                               const std::string& v, std::size_t line) {
      c.rate_model.scale_diffusion_with_temperature = parse_bool(k, v, line);
    };
    m["amagat_at_cell_temperature"] = [](RunConfig& c, const std::string& k, const std::string& v, std::size_t line) {
      c.rate_model.amagat_at_cell_temperature = parse_bool(k, v, line);
    };
    m["nuclear_spin"] = number(&RunConfig::nuclear_spin);
    m["pump_axis"] = [](RunConfig& c, const std::string& k, const std::string& v, std::size_t line) {
      if (v == "x") {
        c.pump_axis = Axis::x;
      } else if (v == "y") {
        c.pump_axis = Axis::y;
      } else if (v == "z") {
        c.pump_axis = Axis::z;
      } else {
        throw ConfigError("line " + std::to_string(line) + ": 'pump_axis' must be x, y or z",
                          k, line);
      }
    };
    m["s_magnitude"] = number(&RunConfig::s_magnitude);
    m["r_op_over_gamma_se"] = number(&RunConfig::r_op_over_gamma_se);
    m["a_hfs_over_gamma_se"] = number(&RunConfig::a_hfs_over_gamma_se);
    m["t_end_over_t_se"] = number(&RunConfig::t_end_over_t_se);
    m["dt_over_t_se"] = number(&RunConfig::dt_over_t_se);
    m["sample_every"] = [](RunConfig& c, const std::string& k, const std::string& v, std::size_t line) {
      c.sample_every = parse_count(k, v, line);
    };
    m["ness_tol"] = number(&RunConfig::ness_tol);
    m["stop_at_ness"] = [](RunConfig& c, const std::string& k, const std::string& v, std::size_t line) {
      c.stop_at_ness = parse_bool(k, v, line);
    };
    m["output"] = [](RunConfig& c, const std::string&, const std::string& v, std::size_t) { c.output = v; };
    return m;
  }();
  return setters;
}

struct RawEntry {
  std::string key;
  std::string value;
  std::size_t line;
};

std::vector<RawEntry> tokenize(const std::string& text) {
  std::vector<RawEntry> entries;
  std::istringstream in(text);
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    const std::string content = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (content.empty()) continue;
    const auto eq = content.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(line) + ": expected 'key = value'", "", line);
    }
    const std::string key = trim(content.substr(0, eq));
    const std::string value = trim(content.substr(eq + 1));
    if (key.empty()) throw ConfigError("line " + std::to_string(line) + ": empty key", "", line);
    entries.push_back({key, value, line});
  }
  return entries;
}

void apply(RunConfig& config, const RawEntry& e) {
  const auto& setters = run_setters();
  const auto it = setters.find(e.key);
  if (it == setters.end()) {
    throw ConfigError("line " + std::to_string(e.line) + ": unknown key '" + e.key + "'", e.key,
                      e.line);
  }
  it->second(config, e.key, e.value, e.line);
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string(), "", 0);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void require(bool ok, const std::string& field, const std::string& why) {
  if (!ok) throw ConfigError("invalid '" + field + "': " + why, field);
}

}  // namespace

void RunConfig::validate() const {
  require(cell.radius_cm > 0.0, "radius_cm", "must be positive");
  require(cell.temperature_c >= 20.0 && cell.temperature_c <= 200.0, "temperature_c",
          "must lie in [20, 200] C");
  require(cell.p_he_torr >= 0.0, "p_he_torr", "must be nonnegative");
  require(cell.p_n2_torr >= 0.0, "p_n2_torr", "must be nonnegative");
  require(cross_sections.sigma_se > 0.0, "sigma_se", "must be positive");
  require(cross_sections.sigma_sd_rb_rb > 0.0, "sigma_sd_rb_rb", "must be positive");
  require(cross_sections.sigma_sd_rb_he > 0.0, "sigma_sd_rb_he", "must be positive");
  require(cross_sections.sigma_sd_rb_n2 > 0.0, "sigma_sd_rb_n2", "must be positive");
  require(rate_model.d0_he > 0.0, "d0_he", "must be positive");
  require(rate_model.d0_n2 > 0.0, "d0_n2", "must be positive");
  require(!rate_model.include_wall || cell.p_he_torr > 0.0 || cell.p_n2_torr > 0.0, "p_he_torr",
          "at least one buffer-gas pressure must be positive");
  try {
    const auto spin = HalfInteger::from_double(nuclear_spin);
    require(spin.twice() >= 0, "nuclear_spin", "must be nonnegative");
  } catch (const std::invalid_argument&) {
    require(false, "nuclear_spin", "must be a multiple of 1/2");
  }
  require(s_magnitude >= 0.0 && s_magnitude <= 1.0, "s_magnitude", "must lie in [0, 1]");
  require(r_op_over_gamma_se >= 0.0, "r_op_over_gamma_se", "must be nonnegative");
  require(a_hfs_over_gamma_se >= 0.0, "a_hfs_over_gamma_se", "must be nonnegative");
  require(t_end_over_t_se > 0.0, "t_end_over_t_se", "must be positive");
  require(dt_over_t_se >= 0.0, "dt_over_t_se", "must be nonnegative");
  require(sample_every >= 1, "sample_every", "must be at least 1");
  require(ness_tol >= 0.0, "ness_tol", "must be nonnegative");
}

void SweepSpec::validate() const {
  if (values.empty()) throw ConfigError("sweep needs at least one value", "sweep.values");
  for (std::size_t i = 0; i < values.size(); ++i) {
    try {
      point(i).validate();
    } catch (const ConfigError& e) {
      throw ConfigError("sweep value " + std::to_string(values[i]) + ": " + e.what(),
                        "sweep.values");
    }
  }
}

RunConfig SweepSpec::point(std::size_t i) const {
  RunConfig c = base;
  const double v = values.at(i);
  switch (variable) {
    case SweepVariable::s:
      c.s_magnitude = v;
      break;
    case SweepVariable::r_op:
      c.r_op_over_gamma_se = v;
      break;
    case SweepVariable::radius:
      c.cell.radius_cm = v;
      break;
  }
  return c;
}

RunConfig parse_config_text(const std::string& text) {
  RunConfig config;
  for (const auto& e : tokenize(text)) apply(config, e);
  config.validate();
  return config;
}

RunConfig parse_config(const std::filesystem::path& path) { return parse_config_text(read_file(path)); }

SweepSpec parse_sweep_text(const std::string& text) {
  SweepSpec spec;
  bool have_variable = false;
  for (const auto& e : tokenize(text)) {
    if (e.key == "sweep.variable") {
      if (e.value == "s") {
        spec.variable = SweepVariable::s;
      } else if (e.value == "r_op") {
        spec.variable = SweepVariable::r_op;
      } else if (e.value == "radius") {
        spec.variable = SweepVariable::radius;
      } else {
        throw ConfigError("line " + std::to_string(e.line) +
                              ": 'sweep.variable' must be s, r_op or radius",
                          e.key, e.line);
      }
      have_variable = true;
    } else if (e.key == "sweep.values") {
      std::istringstream list(e.value);
      std::string item;
      while (std::getline(list, item, ',')) {
        const std::string v = trim(item);
        if (!v.empty()) spec.values.push_back(parse_double(e.key, v, e.line));
      }
    } else {
      apply(spec.base, e);
    }
  }
  if (!have_variable) throw ConfigError("missing 'sweep.variable'", "sweep.variable");
  spec.base.validate();
  spec.validate();
  return spec;
}

SweepSpec parse_sweep(const std::filesystem::path& path) { return parse_sweep_text(read_file(path)); }

std::string to_string(Axis axis) {
  switch (axis) {
    case Axis::x:
      return "x";
    case Axis::y:
      return "y";
    case Axis::z:
      return "z";
  }
  return "?";
}

std::string to_string(SweepVariable variable) {
  switch (variable) {
    case SweepVariable::s:
      return "s";
    case SweepVariable::r_op:
      return "r_op";
    case SweepVariable::radius:
      return "radius";
  }
  return "?";
}

std::string describe(const RunConfig& c) {
  std::ostringstream out;
  out << std::setprecision(12);
  out << "radius_cm=" << c.cell.radius_cm << ";temperature_c=" << c.cell.temperature_c
      << ";p_he_torr=" << c.cell.p_he_torr << ";p_n2_torr=" << c.cell.p_n2_torr
      << ";pump_axis=" << to_string(c.pump_axis) << ";s_magnitude=" << c.s_magnitude
      << ";r_op_over_gamma_se=" << c.r_op_over_gamma_se
      << ";a_hfs_over_gamma_se=" << c.a_hfs_over_gamma_se
      << ";t_end_over_t_se=" << c.t_end_over_t_se << ";stop_at_ness=" << (c.stop_at_ness ? 1 : 0);
  return out.str();
}

}  // namespace spinthermo
