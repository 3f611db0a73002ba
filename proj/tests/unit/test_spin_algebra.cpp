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

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "spinthermo/spin_algebra.hpp"

using namespace spinthermo;

namespace {

HalfInteger h(int twice) { return HalfInteger::from_twice(twice); }

double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

const Complex kI(0.0, 1.0);

}  // namespace

TEST_SUITE("spin_algebra") {

TEST_CASE("half-integers round-trip and reject other values") {
  CHECK(HalfInteger::from_double(1.5).twice() == 3);
  CHECK(HalfInteger::from_double(-0.5).twice() == -1);
  CHECK(HalfInteger::from_double(2.0).value() == doctest::Approx(2.0));
  CHECK_THROWS_AS(HalfInteger::from_double(0.3), std::invalid_argument);
  CHECK((h(3) - h(1)) == h(2));
}

TEST_CASE("spin-1/2 matrices are half the Pauli matrices") {
  const auto j = build_spin_matrices(h(1));
  CHECK(j.z(0, 0).real() == doctest::Approx(0.5));
  CHECK(j.z(1, 1).real() == doctest::Approx(-0.5));
  CHECK(std::abs(j.x(0, 1) - 0.5) < 1e-15);
  CHECK(std::abs(j.x(1, 0) - 0.5) < 1e-15);
  CHECK(std::abs(j.x(0, 0)) < 1e-15);
}

TEST_CASE("spin-3/2 ladder element") {
  const auto j = build_spin_matrices(h(3));
  // Row m = 3/2, column m = 1/2: sqrt(j(j+1) - m(m+1)) / 2 with m = 1/2.
  CHECK(j.x(0, 1).real() == doctest::Approx(std::sqrt(3.0) / 2.0).epsilon(1e-14));
  CHECK(j.x(1, 2).real() == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("angular momentum commutators and Casimir") {
  for (int twice = 1; twice <= 7; ++twice) {
    CAPTURE(twice);
    const auto j = build_spin_matrices(h(twice));
    CHECK(max_abs(j.x * j.y - j.y * j.x - kI * j.z) < 1e-12);
    CHECK(max_abs(j.y * j.z - j.z * j.y - kI * j.x) < 1e-12);
    CHECK(max_abs(j.z * j.x - j.x * j.z - kI * j.y) < 1e-12);
    const double jj = 0.5 * twice * (0.5 * twice + 1.0);
    const Matrix casimir = j.x * j.x + j.y * j.y + j.z * j.z;
    CHECK(max_abs(casimir - jj * Matrix::Identity(twice + 1, twice + 1)) < 1e-12);
    CHECK(hermiticity_defect(j.x) < 1e-15);
    CHECK(hermiticity_defect(j.y) < 1e-15);
  }
}

TEST_CASE("Clebsch-Gordan special values") {
  // Stretched state.
  CHECK(clebsch_gordan(h(3), h(3), h(1), h(1), h(4), h(4)) == doctest::Approx(1.0));
  // Selection rule m1 + m2 = M.
  CHECK(clebsch_gordan(h(3), h(1), h(1), h(1), h(4), h(4)) == 0.0);
  CHECK(clebsch_gordan(h(3), h(3), h(1), h(-1), h(4), h(2)) == doctest::Approx(0.5).epsilon(1e-14));
  // Triangle rule.
  CHECK(clebsch_gordan(h(3), h(1), h(1), h(1), h(6), h(2)) == 0.0);
}

TEST_CASE("Clebsch-Gordan against diagonalization of F^2 in the m_F = 1 block") {
  const auto i = build_spin_matrices(h(3));
  const auto s = build_spin_matrices(h(1));
  const Matrix id_i = Matrix::Identity(4, 4);
  const Matrix id_s = Matrix::Identity(2, 2);
  auto kron = [](const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index r = 0; r < a.rows(); ++r) {
      for (Eigen::Index c = 0; c < a.cols(); ++c) {
        out.block(r * b.rows(), c * b.cols(), b.rows(), b.cols()) = a(r, c) * b;
      }
    }
    return out;
  };
  const Matrix fx = kron(i.x, id_s) + kron(id_i, s.x);
  const Matrix fy = kron(i.y, id_s) + kron(id_i, s.y);
  const Matrix fz = kron(i.z, id_s) + kron(id_i, s.z);
  const Matrix f2 = fx * fx + fy * fy + fz * fz;
  // Product index a*2+b with m_I = 3/2 - a, m_S = 1/2 - b. m_F = 1 block:
  // (m_I, m_S) = (3/2, -1/2) -> 1 and (1/2, 1/2) -> 2.
  Matrix block(2, 2);
  block << f2(1, 1), f2(1, 2), f2(2, 1), f2(2, 2);
  const auto spec = hermitian_spectrum(block);
  CHECK(spec.values[0] == doctest::Approx(2.0));  // F = 1
  CHECK(spec.values[1] == doctest::Approx(6.0));  // F = 2
  const double amp = std::abs(spec.vectors(0, 1));
  CHECK(amp == doctest::Approx(std::abs(clebsch_gordan(h(3), h(3), h(1), h(-1), h(4), h(2))))
                   .epsilon(1e-12));
}

TEST_CASE("Clebsch-Gordan coefficients form an orthogonal matrix") {
  for (int tj1 = 0; tj1 <= 5; ++tj1) {
    for (int tj2 = 1; tj2 <= 3; ++tj2) {
      for (int tm = -(tj1 + tj2); tm <= tj1 + tj2; tm += 2) {
        for (int tJ = std::abs(tj1 - tj2); tJ <= tj1 + tj2; tJ += 2) {
          for (int tJp = tJ; tJp <= tj1 + tj2; tJp += 2) {
            if (std::abs(tm) > tJ || std::abs(tm) > tJp) continue;
            double sum = 0.0;
            for (int tm1 = -tj1; tm1 <= tj1; tm1 += 2) {
              const int tm2 = tm - tm1;
              if (std::abs(tm2) > tj2) continue;
              sum += clebsch_gordan(h(tj1), h(tm1), h(tj2), h(tm2), h(tJ), h(tm)) *
                     clebsch_gordan(h(tj1), h(tm1), h(tj2), h(tm2), h(tJp), h(tm));
            }
            CHECK(sum == doctest::Approx(tJ == tJp ? 1.0 : 0.0).epsilon(1e-12));
          }
        }
      }
    }
  }
}

TEST_CASE("coupled basis ordering and unitarity") {
  const auto basis = build_coupled_basis(kRb87NuclearSpin);
  REQUIRE(basis.dimension() == 8);
  const int expect_f[] = {4, 4, 4, 4, 4, 2, 2, 2};
  const int expect_m[] = {4, 2, 0, -2, -4, 2, 0, -2};
  for (int k = 0; k < 8; ++k) {
    CHECK(basis.labels[k].F.twice() == expect_f[k]);
    CHECK(basis.labels[k].m.twice() == expect_m[k]);
  }
  CHECK((basis.U * basis.U.transpose() - RealMatrix::Identity(8, 8)).cwiseAbs().maxCoeff() < 1e-14);
  CHECK(level_label(basis.labels[1]) == "p_2_+1");
  CHECK(level_label(basis.labels[6]) == "p_1_0");
}

TEST_CASE("coupled operators for I = 3/2") {
  const double a = 2.5;
  const auto ops = build_coupled_operators(kRb87NuclearSpin, a);
  const double fz[] = {2, 1, 0, -1, -2, 1, 0, -1};
  for (int k = 0; k < 8; ++k) CHECK(ops.F[2](k, k).real() == doctest::Approx(fz[k]));
  CHECK(max_abs(Matrix(ops.F[2].diagonal().asDiagonal()) - ops.F[2]) < 1e-13);
  CHECK(ops.S[2](0, 0).real() == doctest::Approx(0.5));
  CHECK(std::abs(ops.H0.trace()) < 1e-12);

  const auto spec = hermitian_spectrum(ops.H0);
  for (int k = 0; k < 3; ++k) CHECK(spec.values[k] == doctest::Approx(-1.25 * a));
  for (int k = 3; k < 8; ++k) CHECK(spec.values[k] == doctest::Approx(0.75 * a));
  CHECK(ops.ground_energy() == doctest::Approx(-1.25 * a));
  CHECK(hermitian_spectrum(ops.shifted_hamiltonian()).values[0] == doctest::Approx(0.0).epsilon(1e-12));

  Matrix f2 = Matrix::Zero(8, 8);
  Matrix s2 = Matrix::Zero(8, 8);
  for (int k = 0; k < 3; ++k) {
    CHECK(max_abs(ops.H0 * ops.F[k] - ops.F[k] * ops.H0) < 1e-12);
    CHECK(max_abs(ops.S[k] * ops.I[k] - ops.I[k] * ops.S[k]) < 1e-12);
    CHECK(max_abs(ops.F[k] - ops.S[k] - ops.I[k]) < 1e-13);
    f2 += ops.F[k] * ops.F[k];
    s2 += ops.S[k] * ops.S[k];
  }
  const double f2_diag[] = {6, 6, 6, 6, 6, 2, 2, 2};
  for (int k = 0; k < 8; ++k) CHECK(f2(k, k).real() == doctest::Approx(f2_diag[k]));
  CHECK(max_abs(s2 - 0.75 * Matrix::Identity(8, 8)) < 1e-13);
  CHECK(max_abs(ops.S[0] * ops.S[1] - ops.S[1] * ops.S[0] - kI * ops.S[2]) < 1e-12);
  CHECK(max_abs(ops.H0 - a * (ops.I[0] * ops.S[0] + ops.I[1] * ops.S[1] + ops.I[2] * ops.S[2])) <
        1e-12);
}

TEST_CASE("other nuclear spins") {
  const auto ops = build_coupled_operators(h(5), 1.0);
  CHECK(ops.dimension() == 12);
  const auto spec = hermitian_spectrum(ops.H0);
  // F = 3: A I / 2 (x7), F = 2: -A (I + 1) / 2 (x5).
  CHECK(spec.values[0] == doctest::Approx(-1.75));
  CHECK(spec.values[4] == doctest::Approx(-1.75));
  CHECK(spec.values[5] == doctest::Approx(1.25));
  CHECK(spec.values[11] == doctest::Approx(1.25));
}

}  // TEST_SUITE
