// Copyright 2026 The qcopy Authors
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

// Three-level (qutrit) state algebra for the transmon levels |A>, |B>, |C>.
//
// Drive convention, used by every backend: a rotation of angle theta with
// drive phase phi on the subspace (j, k) acts as
//
//     [ cos(theta/2)                 -i e^{-i phi} sin(theta/2) ]
//     [ -i e^{+i phi} sin(theta/2)    cos(theta/2)              ]
//
// in the basis (|j>, |k>) and as identity on the remaining level. This is
// exp(-i theta/2 (cos(phi) X + sin(phi) Y)) restricted to the subspace.

#include <Eigen/Dense>

#include <array>
#include <complex>

namespace qcopy {

using Complex = std::complex<double>;
using Vector3c = Eigen::Matrix<Complex, 3, 1>;
using Matrix3c = Eigen::Matrix<Complex, 3, 3>;

enum class Level { A = 0, B = 1, C = 2 };

constexpr std::array<Level, 3> kAllLevels = {Level::A, Level::B, Level::C};

char level_name(Level level);

/// Wraps an angle into (-pi, pi].
double normalize_angle(double radians);

struct Probabilities {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;

  double operator[](Level level) const;
  double sum() const { return a + b + c; }
};

/// Pure qutrit state. Construction checks the norm; every qutrit-core
/// operation keeps it within 1e-12.
class QutritState {
 public:
  /// Tolerance on | ||psi||^2 - 1 | accepted at construction. Loose enough for
  /// integrator output, which is only guaranteed to 1e-9.
  static constexpr double kNormTolerance = 1e-9;

  QutritState() : amps_(1.0, 0.0, 0.0) {}
  QutritState(Complex amp_a, Complex amp_b, Complex amp_c);
  explicit QutritState(const Vector3c& amps);

  static QutritState basis(Level level);

  Complex amp(Level level) const { return amps_(static_cast<int>(level)); }
  const Vector3c& amplitudes() const { return amps_; }
  double norm_squared() const { return amps_.squaredNorm(); }

 private:
  Vector3c amps_;
};

/// Mixed qutrit state.
class QutritDensity {
 public:
  static constexpr double kHermitianTolerance = 1e-9;
  static constexpr double kTraceTolerance = 1e-9;
  static constexpr double kPositivityTolerance = 1e-8;

  QutritDensity() { rho_.setZero(); rho_(0, 0) = 1.0; }
  explicit QutritDensity(const Matrix3c& rho);

  static QutritDensity from_state(const QutritState& state);

  const Matrix3c& matrix() const { return rho_; }
  Complex operator()(int row, int col) const { return rho_(row, col); }
  double trace() const { return rho_.trace().real(); }
  double min_eigenvalue() const;
  double hermiticity_error() const;
  Probabilities populations() const;

 private:
  Matrix3c rho_;
};

class Unitary3 {
 public:
  static constexpr double kUnitarityTolerance = 1e-12;

  Unitary3() : u_(Matrix3c::Identity()) {}
  explicit Unitary3(const Matrix3c& u);

  static Unitary3 identity() { return Unitary3(); }

  const Matrix3c& matrix() const { return u_; }
  Complex operator()(int row, int col) const { return u_(row, col); }

  /// Left-multiplication: (a * b) applies b first.
  friend Unitary3 operator*(const Unitary3& a, const Unitary3& b);

 private:
  Unitary3(const Matrix3c& u, bool /*trusted*/) : u_(u) {}
  Matrix3c u_;
};

enum class Subspace { AB, BC };

/// Drive rotation on one of the two ladder transitions.
class SubspaceRotation {
 public:
  /// theta must lie in [0, 2 pi]; phase is wrapped into (-pi, pi].
  SubspaceRotation(Subspace subspace, double theta, double phase);

  Subspace subspace() const { return subspace_; }
  double theta() const { return theta_; }
  double phase() const { return phase_; }

 private:
  Subspace subspace_;
  double theta_;
  double phase_;
};

Unitary3 rotation_unitary(const SubspaceRotation& rot);

QutritState apply(const Unitary3& u, const QutritState& s);

Probabilities probabilities(const QutritState& s);

struct TransmitAbsorb {
  double transmit = 0.0;
  double absorb = 0.0;
};

/// Ground-state ("transmitted") probability after the three-pulse sequence:
/// pi/2 on AB, amp_scale * pi/2 on AB with phase phi, pi on BC.
/// Throws DomainError unless amp_scale is in [0, 1].
TransmitAbsorb ramsey_closed_form(double amp_scale, double phi);

}  // namespace qcopy
