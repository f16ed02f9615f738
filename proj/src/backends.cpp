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

#include "qcopy/backends.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <string>

#include <Eigen/Eigenvalues>

#include "qcopy/errors.hpp"

namespace qcopy {

namespace {

constexpr double kRadPerUsPerGhz = 2.0 * std::numbers::pi * 1000.0;
constexpr double kDefaultPulseDuration = 0.6;
constexpr int kDefaultStepsPerPulse = 2000;

const Complex kI(0.0, 1.0);

std::optional<Subspace> resonant_subspace(double carrier, const DeviceSpec& dev) {
  if (std::abs(carrier - dev.omega_ab) <= kCarrierToleranceGhz) return Subspace::AB;
  if (std::abs(carrier - dev.omega_bc) <= kCarrierToleranceGhz) return Subspace::BC;
  return std::nullopt;
}

/// One instruction, expressed in the interaction frame of the bare transmon.
struct DrivenSegment {
  std::array<double, 3> detuning{};  // rad/us, carrier-frame level offsets
  double peak_rabi = 0.0;            // rad/us, on the A<->B matrix element
  Complex drive_phase{1.0, 0.0};     // e^{-i phi}
  double start = 0.0;                // us
  const GaussianEnvelope* envelope = nullptr;

  /// t is absolute time in us.
  Matrix3c hamiltonian(double t) const {
    const Complex half = 0.5 * peak_rabi * envelope->shape(t - start) * drive_phase;
    Matrix3c h = Matrix3c::Zero();
    h(0, 1) = half * std::polar(1.0, (detuning[0] - detuning[1]) * t);
    h(1, 2) = std::numbers::sqrt2 * half * std::polar(1.0, (detuning[1] - detuning[2]) * t);
    h(1, 0) = std::conj(h(0, 1));
    h(2, 1) = std::conj(h(1, 2));
    return h;
  }

  double max_rate() const {
    return std::max(std::abs(detuning[0] - detuning[1]), std::abs(detuning[1] - detuning[2])) +
           std::numbers::sqrt2 * std::abs(peak_rabi);
  }
};

DrivenSegment make_segment(const PulseInstruction& ins, const DeviceSpec& dev) {
  DrivenSegment seg;
  seg.detuning = {0.0, kRadPerUsPerGhz * (dev.omega_ab - ins.carrier_freq),
                  kRadPerUsPerGhz * (dev.omega_ab + dev.omega_bc - 2.0 * ins.carrier_freq)};
  // Calibrate on the addressed transition; B<->C carries the sqrt(2) ladder
  // element, so the same area needs a smaller drive.
  const bool addresses_bc = resonant_subspace(ins.carrier_freq, dev) == Subspace::BC;
  seg.peak_rabi = peak_rabi_for_area(ins.envelope) / (addresses_bc ? std::numbers::sqrt2 : 1.0);
  seg.drive_phase = std::polar(1.0, -ins.phase);
  seg.start = ins.start_time;
  seg.envelope = &ins.envelope;
  return seg;
}

int step_count(double span, double dt) {
  return std::max(1, static_cast<int>(std::ceil(span / dt - 1e-9)));
}

void check_dt(const PulseSchedule& sched, const DeviceSpec& dev, double dt) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw StepTooLarge("dt must be positive");
  const double limit = max_stable_dt(sched, dev);
  if (dt > limit) {
    throw StepTooLarge("dt = " + std::to_string(dt) + " us exceeds the stable limit " + std::to_string(limit) +
                       " us for this schedule");
  }
}

/// Fourth-order Magnus step from t to t + h: the generator from two
/// Gauss-Legendre samples plus their commutator, exponentiated exactly. The
/// result is unitary to round-off, so norm and trace do not drift.
template <typename Segment>
Matrix3c magnus_step(const Segment& seg, double t, double h) {
  constexpr double kGaussOffset = 0.28867513459481287;  // sqrt(3) / 6
  const Matrix3c h1 = seg.hamiltonian(t + (0.5 - kGaussOffset) * h);
  const Matrix3c h2 = seg.hamiltonian(t + (0.5 + kGaussOffset) * h);
  // With A = -iH the Magnus generator is -iK for the Hermitian K below.
  const Matrix3c k = 0.5 * h * (h1 + h2) - kI * (std::numbers::sqrt3 * h * h / 12.0) * (h2 * h1 - h1 * h2);
  Eigen::SelfAdjointEigenSolver<Matrix3c> eig(0.5 * (k + k.adjoint()));
  Vector3c phases;
  for (int n = 0; n < 3; ++n) phases(n) = std::polar(1.0, -eig.eigenvalues()(n));
  return eig.eigenvectors() * phases.asDiagonal() * eig.eigenvectors().adjoint();
}

/// Classical RK4 step for a constant linear map y' = f(y).
template <typename State, typename Deriv>
void rk4_step(State& y, double h, const Deriv& f) {
  const State k1 = f(y);
  const State k2 = f(State(y + 0.5 * h * k1));
  const State k3 = f(State(y + 0.5 * h * k2));
  const State k4 = f(State(y + h * k3));
  y += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

}  // namespace

double default_dt(const PulseSchedule& sched) {
  const double d = sched.empty() ? kDefaultPulseDuration : sched.min_duration();
  return d / kDefaultStepsPerPulse;
}

double max_stable_dt(const PulseSchedule& sched, const DeviceSpec& dev) {
  double rate = 0.0;
  for (const auto& ins : sched.instructions()) rate = std::max(rate, make_segment(ins, dev).max_rate());
  return rate > 0.0 ? kMaxPhasePerStep / rate : std::numeric_limits<double>::infinity();
}

QutritState run_ideal(const PulseSchedule& sched, const DeviceSpec& dev) {
  dev.validate();
  QutritState state;
  for (const auto& ins : sched.instructions()) {
    const auto subspace = resonant_subspace(ins.carrier_freq, dev);
    if (!subspace) {
      throw UnknownCarrier("carrier " + std::to_string(ins.carrier_freq) +
                           " GHz matches neither omega_ab nor omega_bc");
    }
    state = apply(rotation_unitary(SubspaceRotation(*subspace, ins.envelope.area, ins.phase)), state);
  }
  return state;
}

QutritState run_timedomain(const PulseSchedule& sched, const DeviceSpec& dev, double dt_us,
                           const StateStepObserver& observer) {
  dev.validate();
  check_dt(sched, dev, dt_us);

  // Idle segments are the identity in this frame.
  Vector3c psi(1.0, 0.0, 0.0);
  for (const auto& ins : sched.instructions()) {
    const DrivenSegment seg = make_segment(ins, dev);
    const int steps = step_count(ins.envelope.duration, dt_us);
    const double h = ins.envelope.duration / steps;
    for (int k = 0; k < steps; ++k) {
      const double t = ins.start_time + k * h;
      psi = magnus_step(seg, t, h) * psi;
      if (observer) observer(t + h, psi);
    }
  }
  return QutritState(psi);
}

QutritDensity run_lindblad(const PulseSchedule& sched, const DeviceSpec& dev, double dt_us,
                           const DensityStepObserver& observer) {
  dev.validate();
  check_dt(sched, dev, dt_us);

  const double gamma1 = 1.0 / dev.t1;
  const double gamma_phi = std::max(0.0, 1.0 / dev.t2 - 1.0 / (2.0 * dev.t1));
  std::array<Matrix3c, 4> jumps;
  for (auto& l : jumps) l.setZero();
  jumps[0](0, 1) = std::sqrt(gamma1);
  jumps[1](1, 2) = std::sqrt(gamma1);
  jumps[2](1, 1) = std::sqrt(2.0 * gamma_phi);
  jumps[3](2, 2) = std::sqrt(2.0 * gamma_phi);
  Matrix3c anticommutator = Matrix3c::Zero();
  for (const auto& l : jumps) anticommutator += l.adjoint() * l;

  // Dissipators are invariant under the diagonal frame change, so they apply
  // unchanged in the interaction frame. Their rates are tiny compared with
  // 1/dt, and RK4 increments are traceless, so the trace is kept exactly.
  auto dissipator = [&](const Matrix3c& rho) -> Matrix3c {
    Matrix3c out = Matrix3c::Zero();
    for (const auto& l : jumps) out.noalias() += l * rho * l.adjoint();
    out -= 0.5 * (anticommutator * rho + rho * anticommutator);
    return out;
  };

  Matrix3c rho = Matrix3c::Zero();
  rho(0, 0) = 1.0;
  auto idle = [&](double t_begin, double span) {
    const int steps = step_count(span, dt_us);
    const double h = span / steps;
    for (int k = 0; k < steps; ++k) {
      rk4_step(rho, h, dissipator);
      if (observer) observer(t_begin + (k + 1) * h, rho);
    }
  };

  double now = 0.0;
  for (const auto& ins : sched.instructions()) {
    if (ins.start_time > now) idle(now, ins.start_time - now);
    const DrivenSegment seg = make_segment(ins, dev);
    const int steps = step_count(ins.envelope.duration, dt_us);
    const double h = ins.envelope.duration / steps;
    // Strang splitting: half dissipation, coherent step, half dissipation.
    for (int k = 0; k < steps; ++k) {
      const double t = ins.start_time + k * h;
      rk4_step(rho, 0.5 * h, dissipator);
      const Matrix3c u = magnus_step(seg, t, h);
      rho = u * rho * u.adjoint();
      rk4_step(rho, 0.5 * h, dissipator);
      if (observer) observer(t + h, rho);
    }
    now = ins.end_time();
  }
  return QutritDensity(rho);
}

}  // namespace qcopy
