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

#include "spinthermo/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <fstream>
#include <limits>
#include <numeric>
#include <optional>
#include <sstream>
#include <thread>

namespace spinthermo {

namespace fs = std::filesystem;

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  std::ostringstream out;
  out.precision(12);
  out << value;
  return out.str();
}

void parallel_for(std::size_t n, unsigned jobs, const std::function<void(std::size_t)>& fn) {
  const std::size_t workers = std::min<std::size_t>(std::max(1u, jobs), n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = next++; i < n; i = next++) fn(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

SpinTemperatureFit fit_spin_temperature(const Matrix& rho, const SpinOperatorSet& ops) {
  const int d = ops.dimension();
  SpinTemperatureFit fit;
  RealVector m(d), logp(d), p(d);
  for (int i = 0; i < d; ++i) {
    m[i] = ops.basis.labels[static_cast<std::size_t>(i)].m.value();
    p[i] = std::max(rho(i, i).real(), kEigenvalueFloor);
    logp[i] = std::log(p[i]);
    for (int j = 0; j < d; ++j) {
      if (i != j) fit.off_diagonal_mass += std::abs(rho(i, j));
    }
  }
  const double mm = m.mean();
  const double ml = logp.mean();
  const double sxx = (m.array() - mm).square().sum();
  const double sxy = ((m.array() - mm) * (logp.array() - ml)).sum();
  fit.beta = sxx > 0.0 ? sxy / sxx : 0.0;
  RealVector model = (fit.beta * m).array().exp();
  model /= model.sum();
  fit.relative_residual = (p - model).norm() / p.norm();
  return fit;
}

std::vector<ObservableSample> analyze_trajectory(const Trajectory& traj, const PumpParams& params,
                                                 const SpinOperatorSet& ops) {
  const Matrix h = ops.shifted_hamiltonian();
  const double energy_unit = ops.a_hfs != 0.0 ? std::abs(ops.a_hfs) : 1.0;
  MasterEquation eq(params, ops);
  Matrix rhs(ops.dimension(), ops.dimension());

  std::vector<ObservableSample> out;
  out.reserve(traj.size());
  for (std::size_t i = 0; i < traj.size(); ++i) {
    const Matrix& rho = traj.states[i].matrix();
    eq.evaluate(rho, rhs);
    ObservableSample s;
    s.thermo.t = traj.times[i];
    s.thermo.t_norm = traj.times_norm[i];
    s.thermo.S_vn = von_neumann_entropy(rho);
    s.thermo.Sigma = entropy_production(rho);
    s.thermo.Sigma_rate = entropy_production_rate(rho, rhs);
    s.thermo.E = trace_product(h, rho).real() / energy_unit;
    s.thermo.ergotropy = ergotropy(rho, h) / energy_unit;
    s.thermo.efficiency = efficiency(rho, h);
    s.qfi = qfi_sample(traj.times[i], rho, ops.F);
    s.F = expectation(rho, ops.F);
    s.S = expectation(rho, ops.S);
    s.populations = rho.diagonal().real();
    out.push_back(std::move(s));
  }
  return out;
}

PumpParams pump_params(const RunConfig& config, const RateSet& rates) {
  PumpParams p;
  p.gamma_se = rates.gamma_se;
  p.gamma_sd = rates.gamma_sd_total;
  p.r_op = config.r_op_over_gamma_se * rates.gamma_se;
  p.s = {0.0, 0.0, 0.0};
  p.s[static_cast<std::size_t>(config.pump_axis)] = config.s_magnitude;
  return p;
}

RunResult simulate(const RunConfig& config) {
  config.validate();
  RunResult r;
  r.config = config;
  r.rates = gamma_sd_total(config.cell, config.cross_sections, config.rate_model);
  r.params = pump_params(config, r.rates);
  r.ops = build_coupled_operators(HalfInteger::from_double(config.nuclear_spin),
                                  config.a_hfs_over_gamma_se * r.rates.gamma_se);

  const double t_se = 1.0 / r.rates.gamma_se;
  IntegrationOptions options;
  options.t_end = config.t_end_over_t_se * t_se;
  options.dt = config.dt_over_t_se * t_se;
  options.sample_every = config.sample_every;
  options.ness_tol = config.ness_tol;
  options.stop_at_ness = config.stop_at_ness;

  r.trajectory = integrate(DensityMatrix::maximally_mixed(r.ops.dimension()), r.params, r.ops, options);
  r.samples = analyze_trajectory(r.trajectory, r.params, r.ops);

  r.summary.reached_ness = r.trajectory.reached_ness;
  r.summary.t_final = r.trajectory.times.back();
  r.summary.t_final_norm = r.trajectory.times_norm.back();
  r.summary.final = r.samples.back();
  r.summary.spin_temperature = fit_spin_temperature(r.trajectory.states.back().matrix(), r.ops);
  return r;
}

namespace {

const std::vector<std::string> kObservableColumns = {
    "S_vn",  "Sigma", "Sigma_rate", "E",     "ergotropy", "efficiency", "qfi_x",
    "qfi_y", "qfi_z", "crb_x",      "crb_y", "crb_z",     "Fx",         "Fy",
    "Fz",    "Sx",    "Sy",         "Sz"};

void append_observables(std::vector<double>& row, const ObservableSample& s) {
  row.insert(row.end(), {s.thermo.S_vn, s.thermo.Sigma, s.thermo.Sigma_rate, s.thermo.E,
                         s.thermo.ergotropy, s.thermo.efficiency, s.qfi.qfi[0], s.qfi.qfi[1],
                         s.qfi.qfi[2], s.qfi.crb[0], s.qfi.crb[1], s.qfi.crb[2], s.F[0], s.F[1],
                         s.F[2], s.S[0], s.S[1], s.S[2]});
  for (Eigen::Index i = 0; i < s.populations.size(); ++i) row.push_back(s.populations[i]);
}

std::vector<std::string> population_columns(const SpinOperatorSet& ops) {
  std::vector<std::string> cols;
  for (const auto& level : ops.basis.labels) cols.push_back(level_label(level));
  return cols;
}

std::ofstream open_csv(const fs::path& path) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

void write_row(std::ostream& out, const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out << ',';
    out << cells[i];
  }
  out << '\n';
}

void write_row(std::ostream& out, const std::vector<double>& values) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out << ',';
    out << format_number(values[i]);
  }
  out << '\n';
}

}  // namespace

std::vector<std::string> rates_header() {
  return {"n_rb_cm3",          "gamma_se_hz",       "gamma_sd_rb_rb_hz", "gamma_sd_rb_he_hz",
          "gamma_sd_rb_n2_hz", "gamma_wall_hz",     "gamma_sd_total_hz", "d_eff_cm2_s"};
}

std::vector<std::string> trajectory_header(const SpinOperatorSet& ops) {
  std::vector<std::string> h = {"t_s", "t_over_tse"};
  h.insert(h.end(), kObservableColumns.begin(), kObservableColumns.end());
  const auto pops = population_columns(ops);
  h.insert(h.end(), pops.begin(), pops.end());
  return h;
}

std::vector<std::string> summary_header(const SpinOperatorSet& ops) {
  std::vector<std::string> h = {"reached_ness", "t_final_s", "t_final_over_tse", "gamma_se",
                                "gamma_sd",     "r_op",      "s_x",              "s_y",
                                "s_z",          "a_hfs"};
  h.insert(h.end(), kObservableColumns.begin(), kObservableColumns.end());
  const auto pops = population_columns(ops);
  h.insert(h.end(), pops.begin(), pops.end());
  h.insert(h.end(), {"beta_fit", "spin_temperature_residual", "off_diagonal_mass"});
  return h;
}

std::vector<double> summary_row(const RunResult& r) {
  std::vector<double> row = {r.summary.reached_ness ? 1.0 : 0.0,
                             r.summary.t_final,
                             r.summary.t_final_norm,
                             r.params.gamma_se,
                             r.params.gamma_sd,
                             r.params.r_op,
                             r.params.s[0],
                             r.params.s[1],
                             r.params.s[2],
                             r.ops.a_hfs};
  append_observables(row, r.summary.final);
  row.insert(row.end(), {r.summary.spin_temperature.beta,
                         r.summary.spin_temperature.relative_residual,
                         r.summary.spin_temperature.off_diagonal_mass});
  return row;
}

void write_rates_csv(const fs::path& path, const RateSet& r) {
  auto out = open_csv(path);
  write_row(out, rates_header());
  write_row(out, std::vector<double>{r.n_rb, r.gamma_se, r.gamma_sd_rb_rb, r.gamma_sd_rb_he,
                                     r.gamma_sd_rb_n2, r.gamma_wall, r.gamma_sd_total, r.d_eff});
}

void write_trajectory_csv(const fs::path& path, const RunResult& result) {
  auto out = open_csv(path);
  write_row(out, trajectory_header(result.ops));
  for (const auto& s : result.samples) {
    std::vector<double> row = {s.thermo.t, s.thermo.t_norm};
    append_observables(row, s);
    write_row(out, row);
  }
}

void write_summary_csv(const fs::path& path, const RunResult& result) {
  auto out = open_csv(path);
  write_row(out, summary_header(result.ops));
  write_row(out, summary_row(result));
}

namespace {

void write_run_outputs(const fs::path& out_dir, const RunResult& result) {
  write_rates_csv(out_dir / "rates.csv", result.rates);
  write_trajectory_csv(out_dir / "trajectory.csv", result);
  write_summary_csv(out_dir / "summary.csv", result);
}

}  // namespace

RunResult run(const RunConfig& config, const fs::path& out_dir) {
  RunResult result = simulate(config);
  write_run_outputs(out_dir, result);
  return result;
}

SweepOutcome sweep(const SweepSpec& spec, const fs::path& out_dir, unsigned jobs) {
  spec.validate();
  std::vector<std::size_t> order(spec.values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return spec.values[a] < spec.values[b]; });

  const std::size_t n = order.size();
  std::vector<std::optional<RunResult>> results(n);
  std::vector<std::string> errors(n);
  parallel_for(n, jobs, [&](std::size_t k) {
    try {
      results[k] = simulate(spec.point(order[k]));
    } catch (const std::exception& e) {
      errors[k] = e.what();
    }
  });

  // All files are written from this thread, in value order.
  SweepOutcome outcome;
  const std::string var = to_string(spec.variable);
  std::optional<std::ofstream> aggregate;
  std::ofstream failures;
  for (std::size_t k = 0; k < n; ++k) {
    SweepPointOutcome point;
    point.value = spec.values[order[k]];
    if (results[k]) {
      const RunResult& r = *results[k];
      write_run_outputs(out_dir / (var + "_" + std::to_string(k)), r);
      point.ok = true;
      point.summary = summary_row(r);
      if (!aggregate) {
        aggregate = open_csv(out_dir / "aggregate.csv");
        std::vector<std::string> header = {var};
        const auto rest = summary_header(r.ops);
        header.insert(header.end(), rest.begin(), rest.end());
        write_row(*aggregate, header);
      }
      std::vector<double> row = {point.value};
      row.insert(row.end(), point.summary.begin(), point.summary.end());
      write_row(*aggregate, row);
    } else {
      point.error = errors[k];
      ++outcome.failures;
      if (!failures.is_open()) {
        failures = open_csv(out_dir / "failures.csv");
        failures << var << ",error\n";
      }
      std::string msg = point.error;
      std::replace(msg.begin(), msg.end(), '"', '\'');
      failures << format_number(point.value) << ",\"" << msg << "\"\n";
    }
    outcome.points.push_back(std::move(point));
  }
  return outcome;
}

// ---------------------------------------------------------------------------
// Figure recipes

namespace {

constexpr double kFigureHorizon = 250.0;     // T_SE
constexpr std::size_t kFigureStride = 500;   // steps between samples
constexpr double kRadiusSweepHorizon = 400.0;

RunConfig figure_base() {
  RunConfig c;
  c.t_end_over_t_se = kFigureHorizon;
  c.sample_every = kFigureStride;
  c.stop_at_ness = false;
  return c;
}

std::string curve_suffix(const std::string& name, double value) {
  return name + format_number(value);
}

struct Curve {
  std::string suffix;
  const RunResult* result;
};

using Extractor = std::function<double(const ObservableSample&)>;

// Time series of one observable for several curves on a shared time grid.
void write_time_panel(const fs::path& path, const std::string& column, const Extractor& get,
                      const std::vector<Curve>& curves) {
  auto out = open_csv(path);
  std::vector<std::string> header = {"t_s", "t_over_tse"};
  for (const auto& c : curves) header.push_back(column + "_" + c.suffix);
  write_row(out, header);
  const auto& grid = curves.front().result->samples;
  for (const auto& c : curves) {
    if (c.result->samples.size() != grid.size()) {
      throw std::runtime_error("figure curves do not share a time grid: " + path.string());
    }
  }
  for (std::size_t i = 0; i < grid.size(); ++i) {
    std::vector<double> row = {grid[i].thermo.t, grid[i].thermo.t_norm};
    for (const auto& c : curves) row.push_back(get(c.result->samples[i]));
    write_row(out, row);
  }
}

void write_single_run_panel(const fs::path& path, const RunResult& r) {
  auto out = open_csv(path);
  std::vector<std::string> header = {"t_s", "t_over_tse", "Fx", "Fy", "Fz"};
  const auto pops = population_columns(r.ops);
  header.insert(header.end(), pops.begin(), pops.end());
  write_row(out, header);
  for (const auto& s : r.samples) {
    std::vector<double> row = {s.thermo.t, s.thermo.t_norm, s.F[0], s.F[1], s.F[2]};
    for (Eigen::Index i = 0; i < s.populations.size(); ++i) row.push_back(s.populations[i]);
    write_row(out, row);
  }
}

std::vector<RunResult> simulate_all(const std::vector<RunConfig>& configs, unsigned jobs) {
  std::vector<std::optional<RunResult>> slots(configs.size());
  parallel_for(configs.size(), jobs, [&](std::size_t i) { slots[i] = simulate(configs[i]); });
  std::vector<RunResult> out;
  out.reserve(slots.size());
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

}  // namespace

std::vector<FigureFile> reproduce_figures(const fs::path& out_dir, unsigned jobs) {
  const std::vector<double> s_values = {0.25, 0.5, 0.75};
  const std::vector<double> r_op_values = {0.0, 0.25, 0.5, 1.0, 2.0};
  const std::vector<double> radii = {0.01, 0.02, 0.05, 0.1, 0.2, 0.3, 0.5,
                                     0.75, 1.0,  1.5,  2.0, 2.5};

  // Time-resolved runs: s sweep at R_op = G_SE, R_op sweep at s = 0.5, and
  // the x-pumped run.
  std::vector<RunConfig> configs;
  for (double s : s_values) {
    RunConfig c = figure_base();
    c.s_magnitude = s;
    configs.push_back(c);
  }
  for (double r : r_op_values) {
    RunConfig c = figure_base();
    c.r_op_over_gamma_se = r;
    configs.push_back(c);
  }
  {
    RunConfig c = figure_base();
    c.pump_axis = Axis::x;
    configs.push_back(c);
  }
  // Stationary efficiency against radius, R_op = G_SE / 2.
  for (double s : s_values) {
    for (double radius : radii) {
      RunConfig c;
      c.s_magnitude = s;
      c.r_op_over_gamma_se = 0.5;
      c.cell.radius_cm = radius;
      c.t_end_over_t_se = kRadiusSweepHorizon;
      c.sample_every = 5000;
      c.stop_at_ness = true;
      configs.push_back(c);
    }
  }

  const std::vector<RunResult> results = simulate_all(configs, jobs);
  const std::size_t n_s = s_values.size();
  const std::size_t n_rop = r_op_values.size();

  std::vector<Curve> s_curves, rop_curves;
  for (std::size_t i = 0; i < n_s; ++i) {
    s_curves.push_back({curve_suffix("s", s_values[i]), &results[i]});
  }
  for (std::size_t i = 0; i < n_rop; ++i) {
    rop_curves.push_back({curve_suffix("rop", r_op_values[i]), &results[n_s + i]});
  }
  const RunResult& z_run = results[1];  // s = 0.5, R_op = G_SE
  const RunResult& x_run = results[n_s + n_rop];

  std::vector<FigureFile> manifest;
  const std::string s_desc = "s in {0.25,0.5,0.75}, R_op = G_SE, z pump";
  const std::string rop_desc = "R_op/G_SE in {0,0.25,0.5,1,2}, s = 0.5, z pump";
  auto add = [&](const std::string& file, const std::string& panel, const std::string& desc,
                 const RunConfig& config) {
    manifest.push_back({file, panel, desc, describe(config)});
  };

  write_single_run_panel(out_dir / "fig2a.csv", z_run);
  add("fig2a.csv", "2a", "<F> and populations, z pump, s = 0.5, R_op = G_SE", z_run.config);
  write_single_run_panel(out_dir / "fig2b.csv", x_run);
  add("fig2b.csv", "2b", "<F> and populations, x pump, s = 0.5, R_op = G_SE", x_run.config);

  struct Quantity {
    std::string column;
    Extractor get;
  };
  const Quantity entropy{"S_vn", [](const ObservableSample& s) { return s.thermo.S_vn; }};
  const Quantity sigma{"Sigma", [](const ObservableSample& s) { return s.thermo.Sigma; }};
  const Quantity sigma_rate{"Sigma_rate",
                            [](const ObservableSample& s) { return s.thermo.Sigma_rate; }};
  const Quantity erg{"ergotropy", [](const ObservableSample& s) { return s.thermo.ergotropy; }};
  const Quantity eff{"efficiency", [](const ObservableSample& s) { return s.thermo.efficiency; }};
  const std::array<Quantity, 3> qfis = {
      Quantity{"qfi_x", [](const ObservableSample& s) { return s.qfi.qfi[0]; }},
      Quantity{"qfi_y", [](const ObservableSample& s) { return s.qfi.qfi[1]; }},
      Quantity{"qfi_z", [](const ObservableSample& s) { return s.qfi.qfi[2]; }}};

  auto panel = [&](const std::string& key, const Quantity& q, bool by_s) {
    const std::string file = "fig" + key + ".csv";
    write_time_panel(out_dir / file, q.column, q.get, by_s ? s_curves : rop_curves);
    add(file, key, q.column + " vs t; " + (by_s ? s_desc : rop_desc), figure_base());
  };

  panel("3a", entropy, true);
  panel("3b", sigma, true);
  panel("3c", sigma_rate, true);
  panel("3d", entropy, false);
  panel("3e", sigma, false);
  panel("3f", sigma_rate, false);

  panel("4a", erg, true);
  panel("4b", eff, true);
  panel("4c", erg, false);
  panel("4d", eff, false);

  {
    auto out = open_csv(out_dir / "fig5.csv");
    std::vector<std::string> header = {"radius_cm", "gamma_sd_hz"};
    for (double s : s_values) header.push_back("efficiency_" + curve_suffix("s", s));
    for (double s : s_values) header.push_back("reached_ness_" + curve_suffix("s", s));
    write_row(out, header);
    const std::size_t base = n_s + n_rop + 1;
    for (std::size_t k = 0; k < radii.size(); ++k) {
      std::vector<double> row = {radii[k], results[base + k].rates.gamma_sd_total};
      for (std::size_t i = 0; i < n_s; ++i) {
        row.push_back(results[base + i * radii.size() + k].summary.final.thermo.efficiency);
      }
      for (std::size_t i = 0; i < n_s; ++i) {
        row.push_back(results[base + i * radii.size() + k].summary.reached_ness ? 1.0 : 0.0);
      }
      write_row(out, row);
    }
    add("fig5.csv", "5",
        "stationary efficiency vs radius 0.01-2.5 cm; s in {0.25,0.5,0.75}, R_op = G_SE/2",
        configs[base]);
  }

  panel("6a", qfis[0], true);
  panel("6b", qfis[1], true);
  panel("6c", qfis[2], true);
  panel("6d", qfis[0], false);
  panel("6e", qfis[1], false);
  panel("6f", qfis[2], false);

  // QFI against efficiency and entropy production, s = 0.75, R_op = G_SE.
  const RunResult& best = results[2];
  std::vector<ThermoSample> thermo;
  std::vector<QfiSample> qfi_series;
  for (const auto& s : best.samples) {
    thermo.push_back(s.thermo);
    qfi_series.push_back(s.qfi);
  }
  const Reparametrization rep = reparametrize(thermo, qfi_series);
  const std::array<std::string, 3> axes = {"x", "y", "z"};
  const std::array<std::string, 3> left = {"7a", "7b", "7c"};
  const std::array<std::string, 3> right = {"7d", "7e", "7f"};
  for (std::size_t k = 0; k < 3; ++k) {
    {
      const std::string file = "fig" + left[k] + ".csv";
      auto out = open_csv(out_dir / file);
      write_row(out, std::vector<std::string>{"efficiency", "qfi_" + axes[k]});
      for (const auto& p : rep.by_efficiency) write_row(out, std::vector<double>{p.abscissa, p.qfi[k]});
      add(file, left[k], "qfi_" + axes[k] + " vs efficiency; s = 0.75, R_op = G_SE", best.config);
    }
    {
      const std::string file = "fig" + right[k] + ".csv";
      auto out = open_csv(out_dir / file);
      write_row(out, std::vector<std::string>{"Sigma", "qfi_" + axes[k]});
      for (const auto& p : rep.by_entropy_production) {
        write_row(out, std::vector<double>{p.abscissa, p.qfi[k]});
      }
      add(file, right[k], "qfi_" + axes[k] + " vs Sigma; s = 0.75, R_op = G_SE", best.config);
    }
  }
  {
    auto out = open_csv(out_dir / "fig7_fits.csv");
    write_row(out, std::vector<std::string>{"generator", "slope", "intercept", "r_squared", "points"});
    for (std::size_t k = 0; k < 3; ++k) {
      const auto& f = rep.sigma_fit[k];
      out << "F" << axes[k] << ',' << format_number(f.slope) << ',' << format_number(f.intercept)
          << ',' << format_number(f.r_squared) << ',' << f.points << '\n';
    }
    add("fig7_fits.csv", "7d-7f", "linear fits of qfi_k against Sigma (Sigma > 1% of final)",
        best.config);
  }

  auto out = open_csv(out_dir / "manifest.csv");
  write_row(out, std::vector<std::string>{"file", "panel", "description", "config"});
  for (const auto& f : manifest) {
    out << f.file << ',' << f.panel << ",\"" << f.description << "\",\"" << f.config << "\"\n";
  }
  return manifest;
}

}  // namespace spinthermo
