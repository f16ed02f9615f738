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

// Pulse-schedule intermediate representation: Gaussian microwave pulses on a
// single drive channel, plus the line-oriented text format
//
//   pulse freq=<GHz> area=<rad> phase=<rad> t0=<us> dur=<us> sigma=<us>

#include <string>
#include <string_view>
#include <vector>

namespace qcopy {

/// Gaussian centred in [0, duration] and truncated at its ends. `area` is the
/// target rotation angle on the resonant transition.
struct GaussianEnvelope {
  double duration = 0.0;  // us
  double sigma = 0.0;     // us
  double area = 0.0;      // rad

  /// sigma = duration / 6, i.e. truncation at +-3 sigma.
  static GaussianEnvelope with_default_sigma(double duration, double area) {
    return {duration, duration / 6.0, area};
  }

  /// Throws DomainError unless duration > 0, sigma > 0, area in [0, 2 pi].
  void validate() const;

  /// Unit-peak shape at time tau after the pulse start; zero outside.
  double shape(double tau) const;

  /// Integral of the unit-peak shape over the pulse (us).
  double shape_integral() const;

  friend bool operator==(const GaussianEnvelope&, const GaussianEnvelope&) = default;
};

/// Rotation angle produced on resonance by the envelope scaled to
/// `peak_rabi` (rad/us) with unit coupling.
double pulse_area(const GaussianEnvelope& env, double peak_rabi);

/// Inverse of pulse_area: the peak Rabi rate (rad/us) that yields env.area.
double peak_rabi_for_area(const GaussianEnvelope& env);

struct PulseInstruction {
  double carrier_freq = 0.0;  // GHz
  GaussianEnvelope envelope;
  double phase = 0.0;       // rad
  double start_time = 0.0;  // us

  double end_time() const { return start_time + envelope.duration; }
  void validate() const;

  friend bool operator==(const PulseInstruction&, const PulseInstruction&) = default;
};

/// Time-ordered, non-overlapping instructions on one drive channel.
class PulseSchedule {
 public:
  PulseSchedule() = default;
  /// Throws DomainError if an instruction is invalid, out of order or
  /// overlaps its predecessor.
  explicit PulseSchedule(std::vector<PulseInstruction> instructions);

  const std::vector<PulseInstruction>& instructions() const { return instructions_; }
  bool empty() const { return instructions_.empty(); }
  std::size_t size() const { return instructions_.size(); }
  double end_time() const;
  /// Shortest instruction duration; 0 for an empty schedule.
  double min_duration() const;

  friend bool operator==(const PulseSchedule&, const PulseSchedule&) = default;

 private:
  std::vector<PulseInstruction> instructions_;
};

/// One `pulse ...` line per instruction, 17 significant digits per value so
/// every double reads back bit-exactly.
std::string serialize_schedule(const PulseSchedule& sched);

/// Inverse of serialize_schedule. Blank lines and `#` comments are skipped;
/// fields may appear in any order but all six are required.
/// Throws FormatError on malformed text.
PulseSchedule parse_schedule(std::string_view text);

}  // namespace qcopy
