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

// Analytic model of a single photon in a two-arm interferometer with a thin
// lossy film at its centre. Deliberately independent of the qutrit code so it
// can serve as a cross-check for the transmon simulation.

#include <complex>

namespace qcopy::optics {

using Amplitude = std::complex<double>;

/// Photon amplitudes in the two paths plus one aggregated loss mode.
struct PhotonModeState {
  Amplitude amp_pa{0.0, 0.0};
  Amplitude amp_pb{0.0, 0.0};
  Amplitude amp_loss{0.0, 0.0};

  double norm_squared() const;
};

/// Film amplitude transmission t and reflection r.
///
/// The ideal coherent absorber has |t|^2 = |r|^2 = 1/4 with r = -t, so the
/// symmetric path mode is absorbed and the anti-symmetric one passes.
class AbsorberParams {
 public:
  static constexpr double kPassivityTolerance = 1e-12;

  /// Throws DomainError if either eigenmode would gain energy.
  AbsorberParams(Amplitude t, Amplitude r);

  static AbsorberParams ideal() { return {0.5, -0.5}; }

  /// True when (t, r) describe a passive film.
  static bool is_passive(Amplitude t, Amplitude r);

  Amplitude t() const { return t_; }
  Amplitude r() const { return r_; }

  /// Single-sided absorption, 1 - |t|^2 - |r|^2.
  double traveling_wave_absorption() const;

 private:
  Amplitude t_;
  Amplitude r_;
};

struct EigenmodeAmplitudes {
  Amplitude sigma_s;  // symmetric mode survival, t + r
  Amplitude sigma_a;  // anti-symmetric mode survival, t - r
};

struct DetectorProbabilities {
  double p_spd_a = 0.0;
  double p_spd_b = 0.0;
  double p_absorb = 0.0;

  double transmission() const { return p_spd_a + p_spd_b; }
};

/// (|A> + e^{i phi} |B>) / sqrt(2): the photon after the input beamsplitter
/// and the phase delay.
PhotonModeState beamsplitter_phase(double phi);

EigenmodeAmplitudes eigenmode_amplitudes(const AbsorberParams& abs);

/// Scatters both paths off the film. The norm lost from the paths is moved
/// into the loss mode, whose amplitude is kept real and non-negative.
PhotonModeState film_scatter(const AbsorberParams& abs, const PhotonModeState& s);

DetectorProbabilities detector_probabilities(const AbsorberParams& abs, double phi);

/// Fringe visibility (max - min) / (max + min) of the total transmission of
/// the film as phi is swept. Throws DomainError for a fully opaque film.
double fringe_visibility(const AbsorberParams& abs);

/// Second-pulse amplitude scale whose Ramsey fringe has visibility v:
/// (2 / pi) asin(v). Throws DomainError unless v is in [0, 1].
double visibility_to_amp_scale(double v);

}  // namespace qcopy::optics
