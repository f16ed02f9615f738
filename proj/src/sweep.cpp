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

#include "qcopy/sweep.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <exception>
#include <sstream>
#include <thread>

#include "qcopy/backends.hpp"
#include "qcopy/errors.hpp"
#include "text.hpp"

namespace qcopy {

namespace {

constexpr int kCsvDigits = 12;
constexpr std::string_view kCsvHeader = "phi,n_shots,count_a,count_b,count_c,p_transmit_hat,ci_low,ci_high,p_oracle";
// The CSV carries 12 significant digits, so re-derived values only agree to
// about that precision.
constexpr double kCsvSlack = 1e-10;

struct PointOutput {
  SweepRow row;
  std::vector<ShotRecord> shots;
};

PointOutput run_point(const dsl::CompiledPoint& point, std::size_t index, const dsl::Absorber& absorber,
                      const RunConfig& config, const std::optional<Discriminator>& disc, bool keep_shots) {
  const Probabilities probs = execute(point.schedule, config);
  CounterRng rng(CounterRng::derive(config.seed, index));
  const std::vector<Level> labels = sample_shots(probs, config.shots, rng);

  PointOutput out;
  std::array<std::size_t, 3> counts{};
  if (disc) {
    out.shots = read_out(labels, config.device.readout, *disc, rng, config.blind);
    for (const auto& rec : out.shots) ++counts[static_cast<std::size_t>(rec.classified_label)];
  } else {
    for (Level l : labels) ++counts[static_cast<std::size_t>(l)];
    if (keep_shots) {
      for (Level l : labels) {
        ShotRecord rec;
        rec.classified_label = l;
        if (!config.blind) rec.true_label = l;
        out.shots.push_back(rec);
      }
    }
  }
  if (!keep_shots) out.shots.clear();

  SweepRow& row = out.row;
  row.phi = point.phi;
  row.n_shots = config.shots;
  row.count_a = counts[0];
  row.count_b = counts[1];
  row.count_c = counts[2];
  row.p_transmit_hat = static_cast<double>(row.count_a) / static_cast<double>(row.n_shots);
  const Interval ci = wilson_interval(row.count_a, row.n_shots);
  row.ci_low = ci.low;
  row.ci_high = ci.high;
  row.p_oracle = dsl::oracle_transmission(absorber, point.phi);
  return out;
}

std::vector<std::string_view> csv_fields(std::string_view line) { return text::split(line, ','); }

}  // namespace

std::string_view backend_name(Backend backend) {
  switch (backend) {
    case Backend::Ideal: return "ideal";
    case Backend::TimeDomain: return "timedomain";
    case Backend::Lindblad: return "lindblad";
  }
  return "?";
}

std::optional<Backend> parse_backend(std::string_view name) {
  for (Backend b : {Backend::Ideal, Backend::TimeDomain, Backend::Lindblad}) {
    if (backend_name(b) == name) return b;
  }
  return std::nullopt;
}

void RunConfig::validate() const {
  if (shots < 1) throw DomainError("shots must be at least 1");
  if (dt && (!(*dt > 0.0) || !std::isfinite(*dt))) throw DomainError("dt must be positive");
  device.validate();
  compile.validate();
}

Interval wilson_interval(std::size_t successes, std::size_t n, double z) {
  if (n == 0) throw DomainError("Wilson interval needs at least one trial");
  const double nn = static_cast<double>(n);
  const double p = static_cast<double>(successes) / nn;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / nn;
  const double centre = (p + z2 / (2.0 * nn)) / denom;
  const double half = z / denom * std::sqrt(p * (1.0 - p) / nn + z2 / (4.0 * nn * nn));
  // Clamp so the interval always contains p despite round-off at p = 0 or 1.
  return {std::min(p, std::max(0.0, centre - half)), std::max(p, std::min(1.0, centre + half))};
}

Probabilities execute(const PulseSchedule& sched, const RunConfig& config) {
  const double dt = config.dt.value_or(default_dt(sched));
  switch (config.backend) {
    case Backend::Ideal: return probabilities(run_ideal(sched, config.device));
    case Backend::TimeDomain: return probabilities(run_timedomain(sched, config.device, dt));
    case Backend::Lindblad: return run_lindblad(sched, config.device, dt).populations();
  }
  throw Error("unknown backend");
}

SweepResult run_sweep(const dsl::ExperimentAst& ast, const RunConfig& config, bool keep_shots) {
  config.validate();
  const auto topo = dsl::topology(ast);
  const std::vector<dsl::CompiledPoint> points = dsl::compile(ast, config.device, config.compile);

  std::optional<Discriminator> disc;
  if (config.readout) disc = calibrate(config.device.readout, config.calibration_shots, ~config.seed);

  std::vector<PointOutput> outputs(points.size());
  std::vector<std::exception_ptr> errors(points.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t k = next++; k < points.size(); k = next++) {
      try {
        outputs[k] = run_point(points[k], k, topo.absorber, config, disc, keep_shots);
      } catch (...) {
        errors[k] = std::current_exception();
      }
    }
  };
  std::size_t n_threads = config.threads ? config.threads : std::max(1u, std::thread::hardware_concurrency());
  n_threads = std::min(n_threads, points.size());
  {
    std::vector<std::jthread> pool;
    for (std::size_t t = 1; t < n_threads; ++t) pool.emplace_back(worker);
    worker();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  std::vector<std::size_t> order(points.size());
  for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return outputs[a].row.phi < outputs[b].row.phi; });

  SweepResult result;
  for (std::size_t k : order) {
    result.rows.push_back(outputs[k].row);
    if (keep_shots) result.shots.push_back(std::move(outputs[k].shots));
  }
  return result;
}

std::string format_csv(const SweepResult& result) {
  std::ostringstream out;
  out << kCsvHeader << "\n";
  for (const auto& r : result.rows) {
    out << text::significant(r.phi, kCsvDigits) << ',' << r.n_shots << ',' << r.count_a << ',' << r.count_b << ','
        << r.count_c << ',' << text::significant(r.p_transmit_hat, kCsvDigits) << ','
        << text::significant(r.ci_low, kCsvDigits) << ',' << text::significant(r.ci_high, kCsvDigits) << ','
        << text::significant(r.p_oracle, kCsvDigits) << "\n";
  }
  return out.str();
}

SweepResult parse_csv(std::string_view source) {
  SweepResult result;
  bool header_seen = false;
  std::size_t line_no = 0;
  for (std::string_view raw : text::lines(source)) {
    ++line_no;
    const std::string_view line = text::trim(raw);
    if (line.empty()) continue;
    auto fail = [&](const std::string& what) {
      return MalformedCsv("line " + std::to_string(line_no) + ": " + what);
    };
    if (!header_seen) {
      if (line != kCsvHeader) throw fail("expected header '" + std::string(kCsvHeader) + "'");
      header_seen = true;
      continue;
    }
    const auto f = csv_fields(line);
    if (f.size() != 9) throw fail("expected 9 fields, found " + std::to_string(f.size()));
    auto real = [&](std::size_t k) {
      auto v = text::parse_double(f[k]);
      if (!v || !std::isfinite(*v)) throw fail("bad number in field " + std::to_string(k + 1));
      return *v;
    };
    auto count = [&](std::size_t k) {
      auto v = text::parse_int<std::size_t>(f[k]);
      if (!v) throw fail("bad count in field " + std::to_string(k + 1));
      return *v;
    };
    SweepRow r;
    r.phi = real(0);
    r.n_shots = count(1);
    r.count_a = count(2);
    r.count_b = count(3);
    r.count_c = count(4);
    r.p_transmit_hat = real(5);
    r.ci_low = real(6);
    r.ci_high = real(7);
    r.p_oracle = real(8);
    if (r.n_shots == 0) throw fail("n_shots is zero");
    if (r.count_a + r.count_b + r.count_c != r.n_shots) throw fail("counts do not sum to n_shots");
    const double expected = static_cast<double>(r.count_a) / static_cast<double>(r.n_shots);
    if (std::abs(r.p_transmit_hat - expected) > kCsvSlack) throw fail("p_transmit_hat != count_a / n_shots");
    if (r.ci_low > r.p_transmit_hat + kCsvSlack || r.p_transmit_hat > r.ci_high + kCsvSlack) {
      throw fail("confidence interval does not contain p_transmit_hat");
    }
    result.rows.push_back(r);
  }
  if (!header_seen) throw MalformedCsv("empty file");
  if (result.rows.empty()) throw MalformedCsv("no data rows");
  return result;
}

std::string format_shot_log(const SweepResult& result) {
  std::ostringstream out;
  out << "phi_index,shot,true_label,i,q,classified_label\n";
  for (std::size_t p = 0; p < result.shots.size(); ++p) {
    for (std::size_t s = 0; s < result.shots[p].size(); ++s) {
      const auto& rec = result.shots[p][s];
      out << p << ',' << s << ',' << (rec.true_label ? std::string(1, level_name(*rec.true_label)) : "") << ','
          << text::significant(rec.iq.i, kCsvDigits) << ',' << text::significant(rec.iq.q, kCsvDigits) << ','
          << level_name(rec.classified_label) << "\n";
    }
  }
  return out.str();
}

SweepReport summarize(const SweepResult& result) {
  if (result.rows.empty()) throw DomainError("no rows to summarize");
  SweepReport rep;
  rep.rows = result.rows.size();
  rep.p_min = result.rows.front().p_transmit_hat;
  rep.p_max = rep.p_min;
  std::size_t covered = 0;
  for (const auto& r : result.rows) {
    rep.p_min = std::min(rep.p_min, r.p_transmit_hat);
    rep.p_max = std::max(rep.p_max, r.p_transmit_hat);
    rep.max_abs_error = std::max(rep.max_abs_error, std::abs(r.p_transmit_hat - r.p_oracle));
    if (r.ci_low <= r.p_oracle && r.p_oracle <= r.ci_high) ++covered;
  }
  if (rep.p_max + rep.p_min <= 0.0) {
    throw DomainError("visibility undefined: no ground-state counts in any row");
  }
  rep.visibility = (rep.p_max - rep.p_min) / (rep.p_max + rep.p_min);
  rep.ci_coverage = static_cast<double>(covered) / static_cast<double>(rep.rows);
  return rep;
}

std::string format_report(const SweepReport& rep) {
  std::ostringstream out;
  out << "rows: " << rep.rows << "\n"
      << "p_transmit_hat range: [" << text::significant(rep.p_min, 6) << ", " << text::significant(rep.p_max, 6)
      << "]\n"
      << "fitted visibility: " << text::significant(rep.visibility, 6) << "\n"
      << "max |p_hat - p_oracle|: " << text::significant(rep.max_abs_error, 6) << "\n"
      << "oracle inside 95% CI: " << text::significant(100.0 * rep.ci_coverage, 4) << "%\n";
  return out.str();
}

}  // namespace qcopy
