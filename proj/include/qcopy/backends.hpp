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

// Execution backends for a PulseSchedule, all starting from |A>:
//
//   run_ideal       instantaneous rotations, one per instruction
//   run_timedomain  fixed-step integration of the three-level RWA Hamiltonian
//   run_lindblad    same Hamiltonian plus T1/T2 dissipators on a density matrix
//
// In the frame co-rotating with a pulse's carrier the Hamiltonian is
//
//   H = diag(0, d1, d2) + Omega(t)/2 [e^{-i phi}(|A><B| + sqrt2 |B><C|) + h.c.]
//
// with d1 = omega_ab - carrier and d2 = omega_ab + omega_bc - 2 carrier (in
// rad/us). The integrators remove the diagonal analytically and work in the
// interaction frame of the bare transmon, where the couplings carry phases
// e^{i (d_j - d_k) t} in absolute time. Frames are therefore phase-continuous
// across instructions, and idle segments are the identity.
//
// Each step of length h is a fourth-order Magnus propagator (unitary up to
// round-off). The Lindblad backend wraps it in a Strang split with RK4 half
// steps of the dissipator.
//
// The ideal backend is the dt -> 0 limit only up to off-resonant AC Stark
// shifts. For the three-pulse absorption sequence at default device
// parameters that residue is about 1.05e-3 in probability near phi = +-pi/2.

#include <functional>

#include "qcopy/device.hpp"
#include "qcopy/pulse.hpp"
#include "qcopy/qutrit.hpp"

namespace qcopy {

/// Carrier-to-transition matching tolerance.
constexpr double kCarrierToleranceGhz = 1e-6;

/// Upper bound on dt times the fastest interaction-frame rate (coupling phase
/// rate plus sqrt2 times the peak Rabi rate).
constexpr double kMaxPhasePerStep = 1.0;

/// Per-step callbacks for test builds (norm and trace checks).
using StateStepObserver = std::function<void(double t_us, const Vector3c& psi)>;
using DensityStepObserver = std::function<void(double t_us, const Matrix3c& rho)>;

/// Throws UnknownCarrier if an instruction is resonant with neither
/// transition, DomainError for an invalid device.
QutritState run_ideal(const PulseSchedule& sched, const DeviceSpec& dev);

/// Throws StepTooLarge if dt exceeds max_stable_dt.
QutritState run_timedomain(const PulseSchedule& sched, const DeviceSpec& dev, double dt_us,
                           const StateStepObserver& observer = {});

/// Dissipators: amplitude damping B->A and C->B at 1/t1; pure dephasing of B
/// and C at gamma_phi = max(0, 1/t2 - 1/(2 t1)), with jump operators
/// sqrt(2 gamma_phi)|k><k|; the A-k coherence then decays at gamma_phi.
QutritDensity run_lindblad(const PulseSchedule& sched, const DeviceSpec& dev, double dt_us,
                           const DensityStepObserver& observer = {});

/// Shortest instruction duration / 2000 (0.6 us / 2000 for an empty schedule).
double default_dt(const PulseSchedule& sched);

/// Largest dt accepted for this schedule and device.
double max_stable_dt(const PulseSchedule& sched, const DeviceSpec& dev);

}  // namespace qcopy
