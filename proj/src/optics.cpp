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

#include "qcopy/optics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "qcopy/errors.hpp"

namespace qcopy::optics {

double PhotonModeState::norm_squared() const {
  return std::norm(amp_pa) + std::norm(amp_pb) + std::norm(amp_loss);
}

bool AbsorberParams::is_passive(Amplitude t, Amplitude r) {
  return std::norm(t + r) <= 1.0 + kPassivityTolerance && std::norm(t - r) <= 1.0 + kPassivityTolerance;
}

AbsorberParams::AbsorberParams(Amplitude t, Amplitude r) : t_(t), r_(r) {
  if (!is_passive(t, r)) {
    throw DomainError("absorber is not passive: |t+r|^2 = " + std::to_string(std::norm(t + r)) +
                      ", |t-r|^2 = " + std::to_string(std::norm(t - r)));
  }
}

double AbsorberParams::traveling_wave_absorption() const {
  return 1.0 - std::norm(t_) - std::norm(r_);
}

PhotonModeState beamsplitter_phase(double phi) {
  const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;
  return {Amplitude(inv_sqrt2, 0.0), std::polar(inv_sqrt2, phi), Amplitude(0.0, 0.0)};
}

EigenmodeAmplitudes eigenmode_amplitudes(const AbsorberParams& abs) {
  return {abs.t() + abs.r(), abs.t() - abs.r()};
}

PhotonModeState film_scatter(const AbsorberParams& abs, const PhotonModeState& s) {
  PhotonModeState out;
  out.amp_pa = abs.t() * s.amp_pa + abs.r() * s.amp_pb;
  out.amp_pb = abs.t() * s.amp_pb + abs.r() * s.amp_pa;
  const double lost = std::norm(s.amp_pa) + std::norm(s.amp_pb) - std::norm(out.amp_pa) - std::norm(out.amp_pb);
  const double loss = std::norm(s.amp_loss) + lost;
  out.amp_loss = Amplitude(std::sqrt(std::max(0.0, loss)), 0.0);
  return out;
}

DetectorProbabilities detector_probabilities(const AbsorberParams& abs, double phi) {
  const PhotonModeState out = film_scatter(abs, beamsplitter_phase(phi));
  return {std::norm(out.amp_pa), std::norm(out.amp_pb), std::norm(out.amp_loss)};
}

double fringe_visibility(const AbsorberParams& abs) {
  // Transmission is |sigma_s|^2 cos^2(phi/2) + |sigma_a|^2 sin^2(phi/2), so
  // the extrema are the two eigenmode survival probabilities.
  const auto [sigma_s, sigma_a] = eigenmode_amplitudes(abs);
  const double ts = std::norm(sigma_s);
  const double ta = std::norm(sigma_a);
  if (ts + ta <= 0.0) throw DomainError("fringe visibility undefined for an opaque film");
  return std::abs(ta - ts) / (ta + ts);
}

double visibility_to_amp_scale(double v) {
  if (!(v >= 0.0 && v <= 1.0)) {
    throw DomainError("visibility " + std::to_string(v) + " outside [0, 1]");
  }
  if (v == 1.0) return 1.0;  // exact, so the ideal film compiles to full-area pulses
  return 2.0 / std::numbers::pi * std::asin(v);
}

}  // namespace qcopy::optics
