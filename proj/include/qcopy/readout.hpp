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

// Dispersive readout as IQ-plane samples, a nearest-centroid discriminator
// calibrated on the basis states, and the categorical shot sampler.

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "qcopy/qutrit.hpp"
#include "qcopy/rng.hpp"

namespace qcopy {

struct IqPoint {
  double i = 0.0;
  double q = 0.0;

  friend bool operator==(const IqPoint&, const IqPoint&) = default;
};

class ReadoutModel {
 public:
  /// Centroids indexed by level; they must be pairwise distinct and
  /// noise_sigma must be positive.
  ReadoutModel(std::array<IqPoint, 3> centroids, double noise_sigma);

  /// Triangle (0,0), (10,0), (5,8.66) with unit noise.
  static ReadoutModel default_model();

  const IqPoint& centroid(Level level) const { return centroids_[static_cast<std::size_t>(level)]; }
  const std::array<IqPoint, 3>& centroids() const { return centroids_; }
  double noise_sigma() const { return noise_sigma_; }

 private:
  std::array<IqPoint, 3> centroids_;
  double noise_sigma_;
};

class Discriminator;

/// Draws shots_per_state IQ samples for each basis level (A, then B, then C)
/// and records their means. Throws DomainError if shots_per_state < 10.
Discriminator calibrate(const ReadoutModel& model, std::size_t shots_per_state, std::uint64_t seed);

class Discriminator {
 public:
  const IqPoint& estimated_centroid(Level level) const {
    return centroids_[static_cast<std::size_t>(level)];
  }

 private:
  friend Discriminator calibrate(const ReadoutModel&, std::size_t, std::uint64_t);
  explicit Discriminator(std::array<IqPoint, 3> centroids) : centroids_(centroids) {}

  std::array<IqPoint, 3> centroids_;
};

struct ShotRecord {
  std::optional<Level> true_label;  // empty in blind mode
  IqPoint iq;
  Level classified_label = Level::A;
};

/// n i.i.d. categorical draws. Throws BadDistribution if the probabilities
/// are negative or do not sum to 1 within 1e-9, or if n is zero.
std::vector<Level> sample_shots(const Probabilities& probs, std::size_t n, CounterRng& rng);
std::vector<Level> sample_shots(const Probabilities& probs, std::size_t n, std::uint64_t seed);

IqPoint simulate_iq(Level label, const ReadoutModel& model, CounterRng& rng);
IqPoint simulate_iq(Level label, const ReadoutModel& model, std::uint64_t seed);

/// Nearest estimated centroid; ties go to the earlier label (A < B < C).
Level classify(const IqPoint& p, const Discriminator& d);

/// Pushes each prepared label through the IQ model and the discriminator.
std::vector<ShotRecord> read_out(const std::vector<Level>& labels, const ReadoutModel& model,
                                 const Discriminator& d, CounterRng& rng, bool blind = false);

}  // namespace qcopy
