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

#include "spinthermo/spin_algebra.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace spinthermo {

namespace {

double factorial(int n) {
  static const std::array<double, 171> table = [] {
    std::array<double, 171> t{};
    t[0] = 1.0;
    for (std::size_t i = 1; i < t.size(); ++i) t[i] = t[i - 1] * static_cast<double>(i);
    return t;
  }();
  if (n < 0 || n >= static_cast<int>(table.size())) {
    throw std::out_of_range("factorial argument out of range");
  }
  return table[static_cast<std::size_t>(n)];
}

// All arguments are in units of 1/2; the combinations used below are even.
int half(int twice) { return twice / 2; }

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

}  // namespace

HalfInteger HalfInteger::from_double(double value) {
  const double twice = 2.0 * value;
  const double rounded = std::round(twice);
  if (!std::isfinite(value) || std::abs(twice - rounded) > 1e-9) {
    throw std::invalid_argument("quantum number must be a multiple of 1/2, got " +
                                std::to_string(value));
  }
  return from_twice(static_cast<int>(rounded));
}

SpinMatrices build_spin_matrices(HalfInteger j) {
  if (j.twice() < 0) throw std::invalid_argument("spin must be nonnegative");
  const int d = j.twice() + 1;
  const double jj = j.value();

  Matrix raise = Matrix::Zero(d, d);
  Matrix jz = Matrix::Zero(d, d);
  for (int k = 0; k < d; ++k) {
    const double m = jj - k;
    jz(k, k) = m;
    // <m+1| J+ |m> sits at (k-1, k).
    if (k > 0) raise(k - 1, k) = std::sqrt(jj * (jj + 1.0) - m * (m + 1.0));
  }
  const Matrix lower = raise.adjoint();
  const Complex i(0.0, 1.0);
  return {j, 0.5 * (raise + lower), -0.5 * i * (raise - lower), jz};
}

double clebsch_gordan(HalfInteger j1, HalfInteger m1, HalfInteger j2, HalfInteger m2, HalfInteger J,
                      HalfInteger M) {
  const int tj1 = j1.twice(), tm1 = m1.twice(), tj2 = j2.twice(), tm2 = m2.twice();
  const int tJ = J.twice(), tM = M.twice();

  if (tj1 < 0 || tj2 < 0 || tJ < 0) return 0.0;
  if (tm1 + tm2 != tM) return 0.0;
  if (std::abs(tm1) > tj1 || std::abs(tm2) > tj2 || std::abs(tM) > tJ) return 0.0;
  if (tJ < std::abs(tj1 - tj2) || tJ > tj1 + tj2) return 0.0;
  if ((tj1 + tj2 + tJ) % 2 != 0) return 0.0;
  if ((tj1 - tm1) % 2 != 0 || (tj2 - tm2) % 2 != 0 || (tJ - tM) % 2 != 0) return 0.0;

  const int a = half(tj1 + tj2 - tJ);
  const int b = half(tj1 - tm1);
  const int c = half(tj2 + tm2);
  const int d = half(tJ - tj2 + tm1);
  const int e = half(tJ - tj1 - tm2);

  const double prefactor =
      std::sqrt((tJ + 1) * factorial(half(tJ + tj1 - tj2)) * factorial(half(tJ - tj1 + tj2)) *
                factorial(a) / factorial(half(tj1 + tj2 + tJ) + 1)) *
      std::sqrt(factorial(half(tJ + tM)) * factorial(half(tJ - tM)) * factorial(half(tj1 - tm1)) *
                factorial(half(tj1 + tm1)) * factorial(half(tj2 - tm2)) *
                factorial(half(tj2 + tm2)));

  const int kmin = std::max({0, -d, -e});
  const int kmax = std::min({a, b, c});
  double sum = 0.0;
  for (int k = kmin; k <= kmax; ++k) {
    const double term = factorial(k) * factorial(a - k) * factorial(b - k) * factorial(c - k) *
                        factorial(d + k) * factorial(e + k);
    sum += (k % 2 == 0 ? 1.0 : -1.0) / term;
  }
  return prefactor * sum;
}

CoupledBasis build_coupled_basis(HalfInteger nuclear_spin) {
  if (nuclear_spin.twice() < 0) throw std::invalid_argument("nuclear spin must be nonnegative");
  const HalfInteger s = kElectronSpin;
  const int dim_i = nuclear_spin.twice() + 1;
  const int dim_s = s.twice() + 1;

  CoupledBasis basis;
  basis.nuclear_spin = nuclear_spin;
  const int f_max = nuclear_spin.twice() + s.twice();
  const int f_min = std::abs(nuclear_spin.twice() - s.twice());
  for (int tf = f_max; tf >= f_min; tf -= 2) {
    for (int tm = tf; tm >= -tf; tm -= 2) {
      basis.labels.push_back({HalfInteger::from_twice(tf), HalfInteger::from_twice(tm)});
    }
  }

  const int d = dim_i * dim_s;
  basis.U = RealMatrix::Zero(d, d);
  for (int r = 0; r < d; ++r) {
    const auto& level = basis.labels[static_cast<std::size_t>(r)];
    for (int a = 0; a < dim_i; ++a) {
      const auto m_i = HalfInteger::from_twice(nuclear_spin.twice() - 2 * a);
      for (int b = 0; b < dim_s; ++b) {
        const auto m_s = HalfInteger::from_twice(s.twice() - 2 * b);
        basis.U(r, a * dim_s + b) = clebsch_gordan(nuclear_spin, m_i, s, m_s, level.F, level.m);
      }
    }
  }
  return basis;
}

Matrix SpinOperatorSet::shifted_hamiltonian() const {
  return H0 - ground_energy() * Matrix::Identity(dimension(), dimension());
}

double SpinOperatorSet::ground_energy() const {
  return hermitian_spectrum(H0).values.minCoeff();
}

SpinOperatorSet build_coupled_operators(HalfInteger nuclear_spin, double a_hfs) {
  SpinOperatorSet ops;
  ops.basis = build_coupled_basis(nuclear_spin);
  ops.a_hfs = a_hfs;

  const SpinMatrices nuc = build_spin_matrices(nuclear_spin);
  const SpinMatrices el = build_spin_matrices(kElectronSpin);
  const Matrix id_i = Matrix::Identity(nuc.dimension(), nuc.dimension());
  const Matrix id_s = Matrix::Identity(el.dimension(), el.dimension());
  const Matrix u = ops.basis.U.cast<Complex>();

  const std::array<const Matrix*, 3> nuc_k{&nuc.x, &nuc.y, &nuc.z};
  const std::array<const Matrix*, 3> el_k{&el.x, &el.y, &el.z};
  const int d = ops.dimension();
  ops.H0 = Matrix::Zero(d, d);
  for (std::size_t k = 0; k < 3; ++k) {
    ops.S[k] = u * kron(id_i, *el_k[k]) * u.adjoint();
    ops.I[k] = u * kron(*nuc_k[k], id_s) * u.adjoint();
    ops.F[k] = ops.S[k] + ops.I[k];
    ops.H0 += ops.I[k] * ops.S[k];
  }
  ops.H0 *= a_hfs;
  return ops;
}

std::string level_label(const HyperfineLevel& level) {
  auto fmt = [](HalfInteger h, bool sign) {
    std::string out;
    const int t = h.twice();
    if (sign && t > 0) out += '+';
    if (t % 2 == 0) {
      out += std::to_string(t / 2);
    } else {
      out += std::to_string(t) + "/2";
    }
    return out;
  };
  return "p_" + fmt(level.F, false) + "_" + fmt(level.m, true);
}

}  // namespace spinthermo
