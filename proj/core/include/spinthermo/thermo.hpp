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

// Entropic and energetic figures of merit of a single-atom state. Entropies
// are in nats. Eigenvalues of rho are clipped into [kEigenvalueFloor, 1]
// before taking logarithms, with the convention 0 ln 0 = 0.

#pragma once

#include <stdexcept>

#include "spinthermo/linalg.hpp"

namespace spinthermo {

inline constexpr double kEigenvalueFloor = 1e-15;

struct ThermoSample {
  double t = 0.0;           ///< s
  double t_norm = 0.0;      ///< t / T_SE
  double S_vn = 0.0;        ///< nats
  double Sigma = 0.0;       ///< accumulated entropy production, nats
  double Sigma_rate = 0.0;  ///< nats/s
  double E = 0.0;           ///< internal energy, units of A_hfs, ground level at 0
  double ergotropy = 0.0;   ///< units of A_hfs
  double efficiency = 0.0;  ///< ergotropy / E in [0, 1]
};

double von_neumann_entropy(const Matrix& rho);

/// Thrown when supp(rho) is not contained in supp(sigma).
class DivergentRelativeEntropy : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// D(rho || sigma) = Tr[rho (ln rho - ln sigma)].
double relative_entropy(const Matrix& rho, const Matrix& sigma);

/// D(rho_t || 1/d): entropy produced relative to the maximally mixed state.
double entropy_production(const Matrix& rho);

/// d/dt D(rho_t || 1/d) = Tr[rho_dot ln rho_t] for a trace-free rho_dot.
double entropy_production_rate(const Matrix& rho, const Matrix& rho_dot);

/// sum_i r_i |e_i><e_i| with r descending and e ascending.
Matrix passive_state(const Matrix& rho, const Matrix& hamiltonian);

/// Tr[H rho_p] computed from the two spectra alone.
double passive_energy(const Matrix& rho, const Matrix& hamiltonian);

/// Tr[H rho] - Tr[H rho_p], clamped at zero against roundoff.
double ergotropy(const Matrix& rho, const Matrix& hamiltonian);

/// Ergotropy over internal energy, with H shifted to a zero ground
/// eigenvalue. Returns 0 when the ergotropy vanishes.
double efficiency(const Matrix& rho, const Matrix& hamiltonian);

}  // namespace spinthermo
