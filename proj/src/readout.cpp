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

#include "qcopy/readout.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qcopy/errors.hpp"

namespace qcopy {

namespace {

constexpr double kDistributionTolerance = 1e-9;
constexpr std::size_t kMinCalibrationShots = 10;

double distance_squared(const IqPoint& a, const IqPoint& b) {
  const double di = a.i - b.i;
  const double dq = a.q - b.q;
  return di * di + dq * dq;
}

}  // namespace

ReadoutModel::ReadoutModel(std::array<IqPoint, 3> centroids, double noise_sigma)
    : centroids_(centroids), noise_sigma_(noise_sigma) {
  if (!(noise_sigma > 0.0) || !std::isfinite(noise_sigma)) {
    throw DomainError("readout noise_sigma must be positive");
  }
  for (std::size_t a = 0; a < 3; ++a) {
    for (std::size_t b = a + 1; b < 3; ++b) {
      if (centroids_[a] == centroids_[b]) throw DomainError("readout centroids must be distinct");
    }
  }
}

ReadoutModel ReadoutModel::default_model() {
  return ReadoutModel({IqPoint{0.0, 0.0}, IqPoint{10.0, 0.0}, IqPoint{5.0, 8.66}}, 1.0);
}

std::vector<Level> sample_shots(const Probabilities& probs, std::size_t n, CounterRng& rng) {
  if (n == 0) throw BadDistribution("shot count must be at least 1");
  const double total = probs.sum();
  // Integrator output can carry round-off of either sign on empty levels.
  if (!(std::abs(total - 1.0) <= kDistributionTolerance) || probs.a < -kDistributionTolerance ||
      probs.b < -kDistributionTolerance || probs.c < -kDistributionTolerance) {
    throw BadDistribution("invalid distribution (" + std::to_string(probs.a) + ", " + std::to_string(probs.b) +
                          ", " + std::to_string(probs.c) + ")");
  }
  const double cut_a = std::max(0.0, probs.a) / total;
  const double cut_b = cut_a + std::max(0.0, probs.b) / total;

  std::vector<Level> out;
  out.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double u = rng.uniform();
    out.push_back(u < cut_a ? Level::A : (u < cut_b ? Level::B : Level::C));
  }
  return out;
}

std::vector<Level> sample_shots(const Probabilities& probs, std::size_t n, std::uint64_t seed) {
  CounterRng rng(seed);
  return sample_shots(probs, n, rng);
}

IqPoint simulate_iq(Level label, const ReadoutModel& model, CounterRng& rng) {
  const IqPoint& c = model.centroid(label);
  const double di = model.noise_sigma() * rng.gaussian();
  const double dq = model.noise_sigma() * rng.gaussian();
  return {c.i + di, c.q + dq};
}

IqPoint simulate_iq(Level label, const ReadoutModel& model, std::uint64_t seed) {
  CounterRng rng(seed);
  return simulate_iq(label, model, rng);
}

Discriminator calibrate(const ReadoutModel& model, std::size_t shots_per_state, std::uint64_t seed) {
  if (shots_per_state < kMinCalibrationShots) {
    throw DomainError("calibration needs at least " + std::to_string(kMinCalibrationShots) + " shots per state");
  }
  CounterRng rng(seed);
  std::array<IqPoint, 3> means{};
  for (Level level : kAllLevels) {
    double sum_i = 0.0;
    double sum_q = 0.0;
    for (std::size_t k = 0; k < shots_per_state; ++k) {
      const IqPoint p = simulate_iq(level, model, rng);
      sum_i += p.i;
      sum_q += p.q;
    }
    const auto n = static_cast<double>(shots_per_state);
    means[static_cast<std::size_t>(level)] = {sum_i / n, sum_q / n};
  }
  return Discriminator(means);
}

Level classify(const IqPoint& p, const Discriminator& d) {
  Level best = Level::A;
  double best_d2 = distance_squared(p, d.estimated_centroid(Level::A));
  for (Level level : {Level::B, Level::C}) {
    const double d2 = distance_squared(p, d.estimated_centroid(level));
    if (d2 < best_d2) {
      best = level;
      best_d2 = d2;
    }
  }
  return best;
}

std::vector<ShotRecord> read_out(const std::vector<Level>& labels, const ReadoutModel& model,
                                 const Discriminator& d, CounterRng& rng, bool blind) {
  std::vector<ShotRecord> out;
  out.reserve(labels.size());
  for (Level label : labels) {
    ShotRecord rec;
    rec.iq = simulate_iq(label, model, rng);
    rec.classified_label = classify(rec.iq, d);
    if (!blind) rec.true_label = label;
    out.push_back(rec);
  }
  return out;
}

}  // namespace qcopy
