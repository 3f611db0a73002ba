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

#pragma once

#include <complex>

#include <Eigen/Dense>

namespace spinthermo {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using RealMatrix = Eigen::MatrixXd;

/// Spectral decomposition of a Hermitian matrix, eigenvalues ascending.
struct HermitianSpectrum {
  RealVector values;
  Matrix vectors;
};

inline HermitianSpectrum hermitian_spectrum(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(m);
  return {solver.eigenvalues(), solver.eigenvectors()};
}

inline double hermiticity_defect(const Matrix& m) {
  return (m - m.adjoint()).norm();
}

/// Tr[a b] without forming the product.
inline Complex trace_product(const Matrix& a, const Matrix& b) {
  return (a.transpose().array() * b.array()).sum();
}

}  // namespace spinthermo
