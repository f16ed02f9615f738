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

#include "qcopy/pulse.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <optional>
#include <sstream>

#include "qcopy/errors.hpp"
#include "text.hpp"

namespace qcopy {

namespace {

constexpr double kTimeSlack = 1e-12;
constexpr double kAreaSlack = 1e-12;
constexpr int kScheduleDigits = 17;

}  // namespace

void GaussianEnvelope::validate() const {
  if (!(duration > 0.0) || !std::isfinite(duration)) throw DomainError("pulse duration must be positive");
  if (!(sigma > 0.0) || !std::isfinite(sigma)) throw DomainError("pulse sigma must be positive");
  if (!(area >= -kAreaSlack && area <= 2.0 * std::numbers::pi + kAreaSlack)) {
    throw DomainError("pulse area " + std::to_string(area) + " outside [0, 2pi]");
  }
}

double GaussianEnvelope::shape(double tau) const {
  if (tau < 0.0 || tau > duration) return 0.0;
  const double x = (tau - 0.5 * duration) / sigma;
  return std::exp(-0.5 * x * x);
}

double GaussianEnvelope::shape_integral() const {
  // Truncated Gaussian: sigma sqrt(2 pi) erf(half-width / (sqrt(2) sigma)).
  const double half = 0.5 * duration;
  return sigma * std::sqrt(2.0 * std::numbers::pi) * std::erf(half / (std::numbers::sqrt2 * sigma));
}

double pulse_area(const GaussianEnvelope& env, double peak_rabi) { return peak_rabi * env.shape_integral(); }

double peak_rabi_for_area(const GaussianEnvelope& env) { return env.area / env.shape_integral(); }

void PulseInstruction::validate() const {
  if (!(carrier_freq > 0.0) || !std::isfinite(carrier_freq)) throw DomainError("carrier frequency must be positive");
  envelope.validate();
  if (!std::isfinite(phase)) throw DomainError("pulse phase is not finite");
  if (!(start_time >= 0.0) || !std::isfinite(start_time)) throw DomainError("pulse start time must be >= 0");
}

PulseSchedule::PulseSchedule(std::vector<PulseInstruction> instructions) : instructions_(std::move(instructions)) {
  for (std::size_t k = 0; k < instructions_.size(); ++k) {
    instructions_[k].validate();
    if (k == 0) continue;
    const auto& prev = instructions_[k - 1];
    const auto& cur = instructions_[k];
    if (cur.start_time < prev.start_time) {
      throw DomainError("schedule instructions are not sorted by start time");
    }
    if (cur.start_time < prev.end_time() - kTimeSlack) {
      throw DomainError("instructions " + std::to_string(k - 1) + " and " + std::to_string(k) + " overlap");
    }
  }
}

double PulseSchedule::end_time() const { return instructions_.empty() ? 0.0 : instructions_.back().end_time(); }

double PulseSchedule::min_duration() const {
  if (instructions_.empty()) return 0.0;
  double d = instructions_.front().envelope.duration;
  for (const auto& ins : instructions_) d = std::min(d, ins.envelope.duration);
  return d;
}

std::string serialize_schedule(const PulseSchedule& sched) {
  std::ostringstream out;
  for (const auto& ins : sched.instructions()) {
    out << "pulse freq=" << text::significant(ins.carrier_freq, kScheduleDigits)
        << " area=" << text::significant(ins.envelope.area, kScheduleDigits)
        << " phase=" << text::significant(ins.phase, kScheduleDigits)
        << " t0=" << text::significant(ins.start_time, kScheduleDigits)
        << " dur=" << text::significant(ins.envelope.duration, kScheduleDigits)
        << " sigma=" << text::significant(ins.envelope.sigma, kScheduleDigits) << "\n";
  }
  return out.str();
}

PulseSchedule parse_schedule(std::string_view source) {
  static constexpr std::array<std::string_view, 6> kFields = {"freq", "area", "phase", "t0", "dur", "sigma"};

  std::vector<PulseInstruction> instructions;
  std::size_t line_no = 0;
  for (std::string_view raw : text::lines(source)) {
    ++line_no;
    std::string_view line = raw;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = text::trim(line);
    if (line.empty()) continue;

    auto fail = [&](const std::string& what) {
      return FormatError("schedule line " + std::to_string(line_no) + ": " + what);
    };

    std::istringstream words{std::string(line)};
    std::string word;
    words >> word;
    if (word != "pulse") throw fail("expected 'pulse'");

    std::array<std::optional<double>, kFields.size()> values;
    while (words >> word) {
      const auto eq = word.find('=');
      if (eq == std::string::npos) throw fail("expected key=value, got '" + word + "'");
      const std::string_view key = std::string_view(word).substr(0, eq);
      const auto it = std::find(kFields.begin(), kFields.end(), key);
      if (it == kFields.end()) throw fail("unknown field '" + std::string(key) + "'");
      auto& slot = values[static_cast<std::size_t>(it - kFields.begin())];
      if (slot) throw fail("duplicate field '" + std::string(key) + "'");
      slot = text::parse_double(std::string_view(word).substr(eq + 1));
      if (!slot) throw fail("bad number for '" + std::string(key) + "'");
    }
    for (std::size_t k = 0; k < kFields.size(); ++k) {
      if (!values[k]) throw fail("missing field '" + std::string(kFields[k]) + "'");
    }

    PulseInstruction ins;
    ins.carrier_freq = *values[0];
    ins.envelope.area = *values[1];
    ins.phase = *values[2];
    ins.start_time = *values[3];
    ins.envelope.duration = *values[4];
    ins.envelope.sigma = *values[5];
    instructions.push_back(ins);
  }
  try {
    return PulseSchedule(std::move(instructions));
  } catch (const DomainError& e) {
    throw FormatError(std::string("invalid schedule: ") + e.what());
  }
}

}  // namespace qcopy
