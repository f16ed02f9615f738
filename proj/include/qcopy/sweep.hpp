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

// Phase-sweep driver: compile, execute a backend per phase point, sample
// shots, optionally push them through the readout chain, and tally.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qcopy/device.hpp"
#include "qcopy/dsl.hpp"
#include "qcopy/readout.hpp"

namespace qcopy {

enum class Backend { Ideal, TimeDomain, Lindblad };

std::string_view backend_name(Backend backend);
std::optional<Backend> parse_backend(std::string_view name);

struct RunConfig {
  Backend backend = Backend::Ideal;
  std::size_t shots = 1000;
  std::uint64_t seed = 0;
  std::optional<double> dt;  // us; default_dt(schedule) when unset
  bool readout = false;      // classify shots through the IQ discriminator
  bool blind = false;        // drop true labels from shot records
  std::size_t calibration_shots = 1000;
  std::size_t threads = 0;  // 0: hardware concurrency
  DeviceSpec device;
  dsl::CompileOptions compile;

  void validate() const;
};

struct SweepRow {
  double phi = 0.0;
  std::size_t n_shots = 0;
  std::size_t count_a = 0;
  std::size_t count_b = 0;
  std::size_t count_c = 0;
  double p_transmit_hat = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  double p_oracle = 0.0;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  /// Per-row shot records; filled only when requested from run_sweep.
  std::vector<std::vector<ShotRecord>> shots;
};

struct Interval {
  double low = 0.0;
  double high = 1.0;
};

constexpr double kZ95 = 1.959963984540054;

/// Wilson score interval for `successes` out of `n` trials.
Interval wilson_interval(std::size_t successes, std::size_t n, double z = kZ95);

/// (p_a, p_b, p_c) from the configured backend; the diagonal for Lindblad.
Probabilities execute(const PulseSchedule& sched, const RunConfig& config);

/// Point k uses seed CounterRng::derive(config.seed, k) for its shots and IQ
/// noise, so rows do not depend on scheduling order. The discriminator is
/// calibrated once from seed ~config.seed. Rows are sorted by phi.
SweepResult run_sweep(const dsl::ExperimentAst& ast, const RunConfig& config, bool keep_shots = false);

/// Header plus one row per phase point; reals with 12 significant digits.
std::string format_csv(const SweepResult& result);

/// Throws MalformedCsv on a bad header, unparsable fields or rows that break
/// the SweepResult invariants.
SweepResult parse_csv(std::string_view text);

/// `phi_index,shot,true_label,i,q,classified_label` lines for a shot log.
std::string format_shot_log(const SweepResult& result);

struct SweepReport {
  std::size_t rows = 0;
  double visibility = 0.0;  // (max - min) / (max + min) of p_transmit_hat
  double p_min = 0.0;
  double p_max = 0.0;
  double max_abs_error = 0.0;  // max |p_transmit_hat - p_oracle|
  double ci_coverage = 0.0;    // fraction of rows with p_oracle inside [ci_low, ci_high]
};

/// Throws DomainError when the visibility is undefined (no ground counts).
SweepReport summarize(const SweepResult& result);

std::string format_report(const SweepReport& report);

}  // namespace qcopy
