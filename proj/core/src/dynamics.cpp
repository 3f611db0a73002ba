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

#include "spinthermo/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace spinthermo {

DensityMatrixDefects density_matrix_defects(const Matrix& rho) {
  DensityMatrixDefects d;
  d.trace = std::abs(rho.trace() - Complex(1.0, 0.0));
  d.hermiticity = hermiticity_defect(rho);
  const Matrix herm = 0.5 * (rho + rho.adjoint());
  d.min_eigenvalue = Eigen::SelfAdjointEigenSolver<Matrix>(herm, Eigen::EigenvaluesOnly)
                         .eigenvalues()
                         .minCoeff();
  return d;
}

DensityMatrix::DensityMatrix(Matrix rho, const DensityMatrixTolerance& tol) : rho_(std::move(rho)) {
  if (rho_.rows() != rho_.cols() || rho_.rows() == 0) {
    throw std::invalid_argument("density matrix must be square and nonempty");
  }
  const auto d = density_matrix_defects(rho_);
  if (d.trace > tol.trace || d.hermiticity > tol.hermiticity || d.min_eigenvalue < -tol.negativity) {
    std::ostringstream msg;
    msg << "not a density matrix: |Tr-1|=" << d.trace << " hermiticity=" << d.hermiticity
        << " min eigenvalue=" << d.min_eigenvalue;
    throw std::invalid_argument(msg.str());
  }
}

DensityMatrix DensityMatrix::maximally_mixed(int dimension) {
  return DensityMatrix(Matrix::Identity(dimension, dimension) / static_cast<double>(dimension));
}

DensityMatrix DensityMatrix::pure(const Vector& psi) {
  const double norm = psi.norm();
  if (norm == 0.0) throw std::invalid_argument("pure state needs a nonzero vector");
  const Vector v = psi / norm;
  return DensityMatrix(v * v.adjoint());
}

void PumpParams::validate() const {
  if (r_op < 0.0 || gamma_se < 0.0 || gamma_sd < 0.0) {
    throw std::invalid_argument("rates must be nonnegative");
  }
  const double norm = std::sqrt(s[0] * s[0] + s[1] * s[1] + s[2] * s[2]);
  if (norm > 1.0 + 1e-12) throw std::invalid_argument("photon spin |s| must not exceed 1");
}

Matrix nuclear_part(const Matrix& rho, const SpinOperatorSet& ops) {
  Matrix phi = 0.25 * rho;
  for (const auto& s : ops.S) phi += s * rho * s;
  return phi;
}

std::array<double, 3> expectation(const Matrix& rho, const std::array<Matrix, 3>& ops) {
  return {trace_product(rho, ops[0]).real(), trace_product(rho, ops[1]).real(),
          trace_product(rho, ops[2]).real()};
}

MasterEquation::MasterEquation(const PumpParams& params, const SpinOperatorSet& ops)
    : params_(params), ops_(&ops) {
  params_.validate();
  const int d = ops.dimension();
  phi_.resize(d, d);
  tmp_.resize(d, d);
  bracket_.resize(d, d);
  commutator_.resize(d, d);
  const double total = params_.r_op + params_.gamma_se + params_.gamma_sd;
  pump_bracket_ = total * Matrix::Identity(d, d);
  for (std::size_t k = 0; k < 3; ++k) pump_bracket_ += 2.0 * params_.r_op * params_.s[k] * ops.S[k];
}

void MasterEquation::evaluate(const Matrix& rho, Matrix& out) {
  const auto& ops = *ops_;
  phi_ = 0.25 * rho;
  for (const auto& s : ops.S) {
    tmp_.noalias() = s.lazyProduct(rho);
    phi_.noalias() += tmp_.lazyProduct(s);
  }

  bracket_ = pump_bracket_;
  const auto mean_s = expectation(rho, ops.S);
  for (std::size_t k = 0; k < 3; ++k) bracket_ += (4.0 * params_.gamma_se * mean_s[k]) * ops.S[k];

  tmp_.noalias() = phi_.lazyProduct(bracket_);
  commutator_.noalias() = ops.H0.lazyProduct(rho);
  commutator_.noalias() -= rho.lazyProduct(ops.H0);

  const double total = params_.r_op + params_.gamma_se + params_.gamma_sd;
  const Complex minus_i(0.0, -1.0);
  out = 0.5 * (tmp_ + tmp_.adjoint()) - total * rho + minus_i * commutator_;
}

Matrix master_rhs(const Matrix& rho, const PumpParams& params, const SpinOperatorSet& ops) {
  MasterEquation eq(params, ops);
  Matrix out(rho.rows(), rho.cols());
  eq.evaluate(rho, out);
  return out;
}

double default_time_step(const PumpParams& params, const SpinOperatorSet& ops) {
  const double fastest =
      std::max({std::abs(ops.a_hfs), params.r_op, params.gamma_se, params.gamma_sd});
  if (!(fastest > 0.0)) throw std::invalid_argument("all rates vanish; no time scale for the step");
  return 1.0 / (50.0 * fastest);
}

namespace {

void check_sample(const Matrix& rho, const IntegrationOptions& options, std::size_t index,
                  double t) {
  const auto d = density_matrix_defects(rho);
  if (!std::isfinite(d.trace) || d.trace > options.max_trace_drift) {
    std::ostringstream msg;
    msg << "trace drift " << d.trace << " at sample " << index << " (t=" << t << " s)";
    throw IntegrationError(msg.str(), index, t);
  }
  if (d.hermiticity > options.max_trace_drift) {
    std::ostringstream msg;
    msg << "hermiticity defect " << d.hermiticity << " at sample " << index << " (t=" << t << " s)";
    throw IntegrationError(msg.str(), index, t);
  }
  if (d.min_eigenvalue < -options.max_negativity) {
    std::ostringstream msg;
    msg << "negative eigenvalue " << d.min_eigenvalue << " at sample " << index << " (t=" << t
        << " s)";
    throw IntegrationError(msg.str(), index, t);
  }
}

}  // namespace

Trajectory integrate(const DensityMatrix& rho0, const PumpParams& params, const SpinOperatorSet& ops,
                     const IntegrationOptions& options) {
  if (!(options.t_end > 0.0)) throw std::invalid_argument("t_end must be positive");
  if (rho0.dimension() != ops.dimension()) {
    throw std::invalid_argument("initial state dimension does not match the operator set");
  }
  const double dt_max = options.dt > 0.0 ? options.dt : default_time_step(params, ops);
  const auto n_steps =
      static_cast<std::size_t>(std::ceil(options.t_end / dt_max * (1.0 - 1e-12)));
  const double dt = options.t_end / static_cast<double>(n_steps);
  const std::size_t stride = std::max<std::size_t>(1, options.sample_every);

  MasterEquation eq(params, ops);
  const int d = ops.dimension();
  Matrix rho = rho0.matrix();
  Matrix k1(d, d), k2(d, d), k3(d, d), k4(d, d), stage(d, d);

  Trajectory traj;
  traj.dt = dt;
  const double ness_threshold = options.ness_tol * params.gamma_se;

  auto record = [&](std::size_t step) {
    const double t = static_cast<double>(step) * dt;
    check_sample(rho, options, traj.states.size(), t);
    traj.times.push_back(t);
    traj.times_norm.push_back(t * params.gamma_se);
    traj.states.emplace_back(rho, DensityMatrixTolerance{options.max_trace_drift, options.max_trace_drift,
                                                         options.max_negativity});
    eq.evaluate(rho, k1);
    const bool stationary = k1.norm() < ness_threshold;
    if (stationary && !traj.reached_ness) {
      traj.reached_ness = true;
      traj.ness_index = traj.states.size() - 1;
    }
    return stationary;
  };

  for (std::size_t step = 0;; ++step) {
    if (step % stride == 0 || step == n_steps) {
      const bool stationary = record(step);
      if (step == n_steps || (options.stop_at_ness && stationary)) break;
    }
    eq.evaluate(rho, k1);
    stage = rho + (0.5 * dt) * k1;
    eq.evaluate(stage, k2);
    stage = rho + (0.5 * dt) * k2;
    eq.evaluate(stage, k3);
    stage = rho + dt * k3;
    eq.evaluate(stage, k4);
    rho += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }

  // reached_ness refers to the final state being stationary.
  if (traj.reached_ness) {
    eq.evaluate(traj.states.back().matrix(), k1);
    if (!(k1.norm() < ness_threshold)) traj.reached_ness = false;
  }
  return traj;
}

DensityMatrix spin_temperature_state(double beta, const SpinOperatorSet& ops) {
  if (!std::isfinite(beta)) throw std::invalid_argument("beta must be finite");
  const int d = ops.dimension();
  RealVector m(d);
  for (int i = 0; i < d; ++i) m[i] = ops.basis.labels[static_cast<std::size_t>(i)].m.value();
  const RealVector exponent = beta * m;
  const RealVector weights = (exponent.array() - exponent.maxCoeff()).exp();
  Matrix rho = Matrix::Zero(d, d);
  rho.diagonal() = (weights / weights.sum()).cast<Complex>();
  return DensityMatrix(std::move(rho));
}

SteadyState detect_steady_state(const Trajectory& traj, const PumpParams& params,
                                const SpinOperatorSet& ops, double tol) {
  if (traj.states.empty()) throw std::invalid_argument("empty trajectory");
  MasterEquation eq(params, ops);
  Matrix rhs(ops.dimension(), ops.dimension());
  const double threshold = tol * params.gamma_se;
  for (std::size_t i = 0; i < traj.states.size(); ++i) {
    eq.evaluate(traj.states[i].matrix(), rhs);
    if (rhs.norm() < threshold) return {true, i};
  }
  return {};
}

}  // namespace spinthermo
