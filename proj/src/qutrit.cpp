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

#include "qcopy/qutrit.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <numbers>
#include <string>

#include "qcopy/errors.hpp"

namespace qcopy {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kAngleSlack = 1e-12;

std::pair<int, int> subspace_levels(Subspace subspace) {
  return subspace == Subspace::AB ? std::pair{0, 1} : std::pair{1, 2};
}

}  // namespace

char level_name(Level level) {
  switch (level) {
    case Level::A: return 'A';
    case Level::B: return 'B';
    case Level::C: return 'C';
  }
  return '?';
}

double normalize_angle(double radians) {
  double r = std::remainder(radians, kTwoPi);
  if (r <= -std::numbers::pi) r += kTwoPi;
  return r;
}

double Probabilities::operator[](Level level) const {
  switch (level) {
    case Level::A: return a;
    case Level::B: return b;
    case Level::C: return c;
  }
  return 0.0;
}

QutritState::QutritState(Complex amp_a, Complex amp_b, Complex amp_c)
    : QutritState(Vector3c(amp_a, amp_b, amp_c)) {}

QutritState::QutritState(const Vector3c& amps) : amps_(amps) {
  const double n = amps_.squaredNorm();
  if (!(std::abs(n - 1.0) <= kNormTolerance)) {
    throw DomainError("qutrit state is not normalized (|psi|^2 = " + std::to_string(n) + ")");
  }
}

QutritState QutritState::basis(Level level) {
  Vector3c v = Vector3c::Zero();
  v(static_cast<int>(level)) = 1.0;
  return QutritState(v);
}

QutritDensity::QutritDensity(const Matrix3c& rho) : rho_(rho) {
  if (hermiticity_error() > kHermitianTolerance) {
    throw DomainError("density matrix is not Hermitian");
  }
  if (std::abs(trace() - 1.0) > kTraceTolerance) {
    throw DomainError("density matrix trace is " + std::to_string(trace()));
  }
  if (min_eigenvalue() < -kPositivityTolerance) {
    throw DomainError("density matrix has a negative eigenvalue");
  }
}

QutritDensity QutritDensity::from_state(const QutritState& state) {
  const Vector3c& v = state.amplitudes();
  return QutritDensity(Matrix3c(v * v.adjoint()));
}

double QutritDensity::min_eigenvalue() const {
  // Symmetrize so the solver sees an exactly Hermitian input.
  const Matrix3c h = 0.5 * (rho_ + rho_.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix3c> solver(h, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

double QutritDensity::hermiticity_error() const {
  return (rho_ - rho_.adjoint()).cwiseAbs().maxCoeff();
}

Probabilities QutritDensity::populations() const {
  return {rho_(0, 0).real(), rho_(1, 1).real(), rho_(2, 2).real()};
}

Unitary3::Unitary3(const Matrix3c& u) : u_(u) {
  const double err = (u_.adjoint() * u_ - Matrix3c::Identity()).cwiseAbs().maxCoeff();
  if (err > kUnitarityTolerance) {
    throw DomainError("matrix is not unitary (max |u'u - I| = " + std::to_string(err) + ")");
  }
}

Unitary3 operator*(const Unitary3& a, const Unitary3& b) {
  return Unitary3(Matrix3c(a.u_ * b.u_), true);
}

SubspaceRotation::SubspaceRotation(Subspace subspace, double theta, double phase)
    : subspace_(subspace), theta_(theta), phase_(normalize_angle(phase)) {
  if (!(theta >= -kAngleSlack && theta <= kTwoPi + kAngleSlack)) {
    throw DomainError("rotation angle " + std::to_string(theta) + " outside [0, 2pi]");
  }
  if (!std::isfinite(phase)) throw DomainError("rotation phase is not finite");
}

Unitary3 rotation_unitary(const SubspaceRotation& rot) {
  const auto [lo, hi] = subspace_levels(rot.subspace());
  const double c = std::cos(rot.theta() / 2.0);
  const double s = std::sin(rot.theta() / 2.0);
  const Complex minus_i(0.0, -1.0);
  Matrix3c u = Matrix3c::Identity();
  u(lo, lo) = c;
  u(hi, hi) = c;
  u(lo, hi) = minus_i * std::polar(s, -rot.phase());
  u(hi, lo) = minus_i * std::polar(s, rot.phase());
  return Unitary3(u);
}

QutritState apply(const Unitary3& u, const QutritState& s) {
  return QutritState(Vector3c(u.matrix() * s.amplitudes()));
}

Probabilities probabilities(const QutritState& s) {
  const Vector3c& v = s.amplitudes();
  return {std::norm(v(0)), std::norm(v(1)), std::norm(v(2))};
}

TransmitAbsorb ramsey_closed_form(double amp_scale, double phi) {
  if (!(amp_scale >= 0.0 && amp_scale <= 1.0)) {
    throw DomainError("amp_scale " + std::to_string(amp_scale) + " outside [0, 1]");
  }
  const double second_angle = amp_scale * std::numbers::pi / 2.0;
  const double transmit = 0.5 * (1.0 - std::sin(second_angle) * std::cos(phi));
  return {transmit, 1.0 - transmit};
}

}  // namespace qcopy
