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

// Mean-field master equation for an optically pumped alkali atom:
//
//   drho/dt = -i[H0, rho] + R_op [phi (1 + 2 s.S) - rho]
//           + G_SE [phi (1 + 4 <S>.S) - rho] + G_SD [phi - rho],
//
// with phi = rho/4 + sum_k S_k rho S_k. Products phi*(...) are replaced by
// their Hermitian part.

#pragma once

#include <array>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "spinthermo/linalg.hpp"
#include "spinthermo/spin_algebra.hpp"

namespace spinthermo {

struct DensityMatrixTolerance {
  double trace = 1e-9;
  double hermiticity = 1e-9;
  double negativity = 1e-9;
};

struct DensityMatrixDefects {
  double trace = 0.0;        ///< |Tr rho - 1|
  double hermiticity = 0.0;  ///< ||rho - rho^dagger||_F
  double min_eigenvalue = 0.0;
};

DensityMatrixDefects density_matrix_defects(const Matrix& rho);

class DensityMatrix {
 public:
  /// Throws std::invalid_argument if rho violates the tolerances.
  explicit DensityMatrix(Matrix rho, const DensityMatrixTolerance& tol = {});

  static DensityMatrix maximally_mixed(int dimension);
  /// |psi><psi| for a (not necessarily normalized) nonzero vector.
  static DensityMatrix pure(const Vector& psi);

  const Matrix& matrix() const { return rho_; }
  int dimension() const { return static_cast<int>(rho_.rows()); }
  RealVector populations() const { return rho_.diagonal().real(); }

 private:
  Matrix rho_;
};

struct PumpParams {
  double r_op = 0.0;            ///< optical pumping rate, 1/s
  std::array<double, 3> s{};    ///< photon spin vector, |s| <= 1
  double gamma_se = 0.0;        ///< spin-exchange rate, 1/s
  double gamma_sd = 0.0;        ///< spin-destruction rate, 1/s

  /// Throws std::invalid_argument on negative rates or |s| > 1.
  void validate() const;
};

/// phi = rho/4 + sum_k S_k rho S_k.
Matrix nuclear_part(const Matrix& rho, const SpinOperatorSet& ops);

Matrix master_rhs(const Matrix& rho, const PumpParams& params, const SpinOperatorSet& ops);

/// Reusable scratch space for repeated right-hand-side evaluations. One
/// instance per trajectory; not shareable between threads.
class MasterEquation {
 public:
  MasterEquation(const PumpParams& params, const SpinOperatorSet& ops);

  void evaluate(const Matrix& rho, Matrix& out);

  const PumpParams& params() const { return params_; }
  const SpinOperatorSet& ops() const { return *ops_; }

 private:
  PumpParams params_;
  const SpinOperatorSet* ops_;
  Matrix phi_, tmp_, bracket_, commutator_;
  Matrix pump_bracket_;
};

/// 1 / (50 max(A_hfs, R_op, G_SE, G_SD)).
double default_time_step(const PumpParams& params, const SpinOperatorSet& ops);

struct IntegrationOptions {
  double t_end = 0.0;         ///< seconds
  double dt = 0.0;            ///< seconds; <= 0 selects default_time_step
  std::size_t sample_every = 100;
  double ness_tol = 1e-7;     ///< NESS when ||rhs||_F < ness_tol * G_SE
  bool stop_at_ness = false;  ///< end at the first sample that is stationary
  double max_trace_drift = 1e-6;
  double max_negativity = 1e-6;
};

struct Trajectory {
  std::vector<double> times;       ///< seconds
  std::vector<double> times_norm;  ///< t / T_SE = t * G_SE
  std::vector<DensityMatrix> states;
  double dt = 0.0;
  bool reached_ness = false;
  std::size_t ness_index = 0;  ///< first stationary sample, valid if reached_ness

  std::size_t size() const { return states.size(); }
};

/// Raised when a sampled state drifts beyond the integrity bounds.
class IntegrationError : public std::runtime_error {
 public:
  IntegrationError(const std::string& what, std::size_t sample_index, double time)
      : std::runtime_error(what), sample_index_(sample_index), time_(time) {}

  std::size_t sample_index() const { return sample_index_; }
  double time() const { return time_; }

 private:
  std::size_t sample_index_;
  double time_;
};

/// Classical fixed-step RK4. The mean spin <S> is re-evaluated in every stage.
Trajectory integrate(const DensityMatrix& rho0, const PumpParams& params, const SpinOperatorSet& ops,
                     const IntegrationOptions& options);

/// Diagonal e^{beta F_z} / Z in the coupled basis.
DensityMatrix spin_temperature_state(double beta, const SpinOperatorSet& ops);

struct SteadyState {
  bool reached = false;
  std::size_t index = 0;
};

/// First sample whose ||rhs||_F < tol * G_SE.
SteadyState detect_steady_state(const Trajectory& traj, const PumpParams& params,
                                const SpinOperatorSet& ops, double tol);

/// Tr[rho A] for each of the three components.
std::array<double, 3> expectation(const Matrix& rho, const std::array<Matrix, 3>& ops);

}  // namespace spinthermo
