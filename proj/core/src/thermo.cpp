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

#include "spinthermo/thermo.hpp"

#include <algorithm>
#include <cmath>

namespace spinthermo {

namespace {

// Eigenvalues clipped into [0, 1] and renormalized to unit sum.
RealVector clipped_probabilities(const RealVector& values) {
  RealVector p = values.cwiseMax(0.0).cwiseMin(1.0);
  const double total = p.sum();
  if (total > 0.0) p /= total;
  return p;
}

double log_floor(double p) { return std::log(std::max(p, kEigenvalueFloor)); }

// Tr[rho ln rho] = -S(rho).
double negentropy(const RealVector& p) {
  double acc = 0.0;
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    if (p[i] > kEigenvalueFloor) acc += p[i] * std::log(p[i]);
  }
  return acc;
}

Matrix shift_to_ground(const Matrix& h) {
  const double ground = hermitian_spectrum(h).values.minCoeff();
  return h - ground * Matrix::Identity(h.rows(), h.cols());
}

}  // namespace

double von_neumann_entropy(const Matrix& rho) {
  const auto spectrum = hermitian_spectrum(rho);
  return -negentropy(clipped_probabilities(spectrum.values));
}

double relative_entropy(const Matrix& rho, const Matrix& sigma) {
  const auto rs = hermitian_spectrum(rho);
  const auto ss = hermitian_spectrum(sigma);
  const RealVector p = clipped_probabilities(rs.values);
  const RealVector q = clipped_probabilities(ss.values);

  // Tr[rho ln sigma] = sum_j <s_j| rho |s_j> ln q_j.
  const Matrix rho_in_sigma = ss.vectors.adjoint() * rho * ss.vectors;
  double cross = 0.0;
  for (Eigen::Index j = 0; j < q.size(); ++j) {
    const double weight = rho_in_sigma(j, j).real();
    if (weight <= kEigenvalueFloor) continue;
    if (q[j] <= kEigenvalueFloor) {
      throw DivergentRelativeEntropy("relative entropy diverges: rho has weight outside supp(sigma)");
    }
    cross += weight * std::log(q[j]);
  }
  return negentropy(p) - cross;
}

double entropy_production(const Matrix& rho) {
  const auto d = rho.rows();
  return relative_entropy(rho, Matrix::Identity(d, d) / static_cast<double>(d));
}

double entropy_production_rate(const Matrix& rho, const Matrix& rho_dot) {
  const auto spectrum = hermitian_spectrum(rho);
  const RealVector p = clipped_probabilities(spectrum.values);
  const Matrix rate_in_eigenbasis = spectrum.vectors.adjoint() * rho_dot * spectrum.vectors;
  double acc = 0.0;
  for (Eigen::Index i = 0; i < p.size(); ++i) acc += rate_in_eigenbasis(i, i).real() * log_floor(p[i]);
  return acc;
}

Matrix passive_state(const Matrix& rho, const Matrix& hamiltonian) {
  const auto rs = hermitian_spectrum(rho);
  const auto hs = hermitian_spectrum(hamiltonian);
  const auto d = rho.rows();
  Matrix out = Matrix::Zero(d, d);
  // Both spectra come back ascending: pair the i-th largest population with
  // the i-th lowest energy.
  for (Eigen::Index i = 0; i < d; ++i) {
    const double r = rs.values[d - 1 - i];
    const Vector e = hs.vectors.col(i);
    out += r * e * e.adjoint();
  }
  return out;
}

double passive_energy(const Matrix& rho, const Matrix& hamiltonian) {
  const RealVector r = hermitian_spectrum(rho).values;
  const RealVector e = hermitian_spectrum(hamiltonian).values;
  const auto d = r.size();
  double acc = 0.0;
  for (Eigen::Index i = 0; i < d; ++i) acc += r[d - 1 - i] * e[i];
  return acc;
}

double ergotropy(const Matrix& rho, const Matrix& hamiltonian) {
  const double energy = trace_product(hamiltonian, rho).real();
  return std::max(0.0, energy - passive_energy(rho, hamiltonian));
}

double efficiency(const Matrix& rho, const Matrix& hamiltonian) {
  const Matrix h = shift_to_ground(hamiltonian);
  const double energy = trace_product(h, rho).real();
  const double work = ergotropy(rho, h);
  // Roundoff floor relative to the spectral width of H.
  const double scale = hermitian_spectrum(h).values.cwiseAbs().maxCoeff();
  if (work <= 1e-12 * scale || energy <= 0.0) return 0.0;
  return std::clamp(work / energy, 0.0, 1.0);
}

}  // namespace spinthermo
