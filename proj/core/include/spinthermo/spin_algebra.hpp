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

// Angular-momentum algebra for an alkali ground state: spin matrices,
// Clebsch-Gordan coefficients, the coupled |F, m_F> basis and the hyperfine
// Hamiltonian A_hfs I.S. Units: hbar = 1, energies in rad/s.

#pragma once

#include <array>
#include <string>
#include <vector>

#include "spinthermo/linalg.hpp"

namespace spinthermo {

/// A quantum number restricted to multiples of 1/2, stored as twice its value.
class HalfInteger {
 public:
  constexpr HalfInteger() = default;

  static constexpr HalfInteger from_twice(int twice) {
    HalfInteger h;
    h.twice_ = twice;
    return h;
  }

  /// Throws std::invalid_argument unless 2*value is an integer.
  static HalfInteger from_double(double value);

  constexpr int twice() const { return twice_; }
  constexpr double value() const { return 0.5 * twice_; }

  friend constexpr bool operator==(HalfInteger, HalfInteger) = default;
  friend constexpr auto operator<=>(HalfInteger, HalfInteger) = default;
  friend constexpr HalfInteger operator+(HalfInteger a, HalfInteger b) {
    return from_twice(a.twice_ + b.twice_);
  }
  friend constexpr HalfInteger operator-(HalfInteger a, HalfInteger b) {
    return from_twice(a.twice_ - b.twice_);
  }

 private:
  int twice_ = 0;
};

inline constexpr HalfInteger kElectronSpin = HalfInteger::from_twice(1);
inline constexpr HalfInteger kRb87NuclearSpin = HalfInteger::from_twice(3);

/// Jx, Jy, Jz in the |j, m> basis with m = j, j-1, ..., -j.
struct SpinMatrices {
  HalfInteger j;
  Matrix x;
  Matrix y;
  Matrix z;

  int dimension() const { return j.twice() + 1; }
};

/// Throws std::invalid_argument for negative j.
SpinMatrices build_spin_matrices(HalfInteger j);

/// <j1 m1; j2 m2 | J M> in the Condon-Shortley convention (Racah formula).
/// Returns 0 whenever a selection rule is violated.
double clebsch_gordan(HalfInteger j1, HalfInteger m1, HalfInteger j2, HalfInteger m2, HalfInteger J,
                      HalfInteger M);

struct HyperfineLevel {
  HalfInteger F;
  HalfInteger m;
};

/// Uncoupled |m_I> (x) |m_S> to coupled |F, m_F> change of basis. Row r of U
/// holds the coefficients of coupled state labels[r]; uncoupled column index is
/// a*(2S+1) + b with m_I and m_S both descending.
struct CoupledBasis {
  HalfInteger nuclear_spin;
  std::vector<HyperfineLevel> labels;
  RealMatrix U;

  int dimension() const { return static_cast<int>(labels.size()); }
};

/// Ordering: F = I + 1/2 manifold first, m_F descending inside each manifold.
CoupledBasis build_coupled_basis(HalfInteger nuclear_spin);

/// The nine spin operators and H0 expressed in the coupled basis.
struct SpinOperatorSet {
  CoupledBasis basis;
  std::array<Matrix, 3> S;
  std::array<Matrix, 3> I;
  std::array<Matrix, 3> F;
  Matrix H0;
  double a_hfs = 0.0;

  int dimension() const { return basis.dimension(); }

  /// H0 shifted so its lowest eigenvalue is zero.
  Matrix shifted_hamiltonian() const;

  /// Ground-state energy of H0: -(I+1) A_hfs / 2 for I >= 1/2.
  double ground_energy() const;
};

SpinOperatorSet build_coupled_operators(HalfInteger nuclear_spin, double a_hfs);

/// "p_2_+1" style label for a coupled level.
std::string level_label(const HyperfineLevel& level);

}  // namespace spinthermo
