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

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "qcopy/errors.hpp"
#include "qcopy/sweep.hpp"

namespace qcopy {
namespace {

namespace fs = std::filesystem;
constexpr double kPi = std::numbers::pi;

std::string slurp(const std::string& name) {
  std::ifstream in(fs::path(QCOPY_TEST_DATA_DIR) / name);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

dsl::ExperimentAst program(const std::string& phase, const std::string& absorber = "t=0.5 r=-0.5") {
  return dsl::parse("source A\nbeamsplitter bs1 ratio=0.5\nphase phi" + phase + "\nabsorber film " + absorber +
                    "\ndetectors SPD-A SPD-B\n");
}

// Oracle: Wilson score interval from its quadratic-root definition,
// (p_hat - p)^2 = z^2 p (1 - p) / n, solved for p.
Interval wilson_oracle(double k, double n, double z) {
  const double ph = k / n;
  const double a = 1 + z * z / n;
  const double b = -(2 * ph + z * z / n);
  const double c = ph * ph;
  // b^2 - 4ac, expanded.
  const double zn = z * z / n;
  const double disc = std::sqrt(zn * (4 * ph * (1 - ph) + zn));
  const double q = 0.5 * (-b + disc);
  return {c / q, q / a};
}

RunConfig ideal_config(std::size_t shots, std::uint64_t seed) {
  RunConfig c;
  c.shots = shots;
  c.seed = seed;
  return c;
}

const char* kHeader = "phi,n_shots,count_a,count_b,count_c,p_transmit_hat,ci_low,ci_high,p_oracle\n";

TEST(Wilson, MatchesQuadraticOracle) {
  for (std::size_t n : {1u, 2u, 10u, 37u, 1000u, 100000u}) {
    for (std::size_t k : {std::size_t{0}, n / 3, n / 2, n}) {
      const auto got = wilson_interval(k, n);
      const auto want = wilson_oracle(static_cast<double>(k), static_cast<double>(n), kZ95);
      EXPECT_NEAR(got.low, want.low, 1e-12) << k << "/" << n;
      EXPECT_NEAR(got.high, want.high, 1e-12) << k << "/" << n;
      const double p = static_cast<double>(k) / n;
      EXPECT_LE(got.low, p);
      EXPECT_GE(got.high, p);
    }
  }
  EXPECT_THROW(wilson_interval(0, 0), DomainError);
}

TEST(Wilson, SingleShotIsWide) {
  EXPECT_GT(wilson_interval(0, 1).high - wilson_interval(0, 1).low, 0.7);
  EXPECT_GT(wilson_interval(1, 1).high - wilson_interval(1, 1).low, 0.7);
}

TEST(Backend, Names) {
  for (Backend b : {Backend::Ideal, Backend::TimeDomain, Backend::Lindblad}) {
    EXPECT_EQ(parse_backend(backend_name(b)), b);
  }
  EXPECT_FALSE(parse_backend("Ideal").has_value());
}

TEST(RunConfig, Validation) {
  RunConfig c;
  c.shots = 0;
  EXPECT_THROW(c.validate(), DomainError);
  c.shots = 1;
  c.dt = -1.0;
  EXPECT_THROW(c.validate(), DomainError);
}

TEST(RunSweep, IdealReferenceProgram) {
  const auto result = run_sweep(dsl::parse(slurp("reference.qc")), ideal_config(1000, 7));
  ASSERT_EQ(result.rows.size(), 41u);
  const auto& mid = result.rows[20];
  EXPECT_EQ(mid.phi, 0.0);
  EXPECT_EQ(mid.p_transmit_hat, 0.0);
  EXPECT_EQ(mid.count_a, 0u);
  for (std::size_t k = 0; k < result.rows.size(); ++k) {
    const auto& r = result.rows[k];
    if (k) EXPECT_LT(result.rows[k - 1].phi, r.phi);
    EXPECT_EQ(r.count_a + r.count_b + r.count_c, r.n_shots);
    EXPECT_EQ(r.count_b, 0u);
    EXPECT_NEAR(r.p_oracle, std::pow(std::sin(r.phi / 2), 2), 1e-12);
    EXPECT_LE(r.ci_low, r.p_transmit_hat);
    EXPECT_GE(r.ci_high, r.p_transmit_hat);
  }
}

TEST(RunSweep, ReducedVisibilityOracleMinimum) {
  const auto result = run_sweep(dsl::parse(slurp("reduced.qc")), ideal_config(1000, 7));
  double best = 1.0;
  double at = 99.0;
  for (const auto& r : result.rows) {
    if (r.p_oracle < best) {
      best = r.p_oracle;
      at = r.phi;
    }
  }
  EXPECT_EQ(at, 0.0);
  EXPECT_NEAR(best, 0.0546, 2e-4);
}

TEST(RunSweep, SingleShotIntervals) {
  const auto result = run_sweep(program(" sweep(-3, 3, 7)"), ideal_config(1, 3));
  for (const auto& r : result.rows) EXPECT_GT(r.ci_high - r.ci_low, 0.7);
}

TEST(RunSweep, LargeShotCountConverges) {
  const auto result = run_sweep(program(" sweep(-3.14159265, 3.14159265, 41)"), ideal_config(100000, 11));
  for (const auto& r : result.rows) {
    const double p = std::pow(std::sin(r.phi / 2), 2);
    EXPECT_LE(std::abs(r.p_transmit_hat - p), 3 * std::sqrt(p * (1 - p) / 1e5)) << r.phi;
  }
}

TEST(RunSweep, ThreadCountDoesNotChangeOutput) {
  auto c = ideal_config(500, 99);
  c.readout = true;
  c.threads = 1;
  const auto ast = dsl::parse(slurp("reduced.qc"));
  const auto one = format_csv(run_sweep(ast, c));
  c.threads = 4;
  EXPECT_EQ(format_csv(run_sweep(ast, c)), one);
  c.threads = 0;
  EXPECT_EQ(format_csv(run_sweep(ast, c)), one);
}

TEST(RunSweep, SeedsChangeOutput) {
  const auto ast = dsl::parse(slurp("reference.qc"));
  EXPECT_NE(format_csv(run_sweep(ast, ideal_config(100, 1))), format_csv(run_sweep(ast, ideal_config(100, 2))));
}

TEST(RunSweep, ReadoutAndShotLog) {
  auto c = ideal_config(200, 5);
  c.readout = true;
  const auto result = run_sweep(program(" sweep(-3, 3, 3)"), c, true);
  ASSERT_EQ(result.shots.size(), 3u);
  EXPECT_EQ(result.shots[0].size(), 200u);
  std::size_t matches = 0;
  for (const auto& s : result.shots[1]) matches += s.classified_label == s.true_label;
  EXPECT_GE(matches, 199u);
  const std::string log = format_shot_log(result);
  EXPECT_EQ(log.rfind("phi_index,shot,true_label,i,q,classified_label\n0,0,", 0), 0u);

  c.blind = true;
  const auto blind = run_sweep(program(" sweep(-3, 3, 3)"), c, true);
  for (const auto& s : blind.shots[2]) EXPECT_FALSE(s.true_label.has_value());
  EXPECT_NE(format_shot_log(blind).find("\n0,0,,"), std::string::npos);
  EXPECT_EQ(format_csv(blind), format_csv(result));
}

TEST(RunSweep, IntegratingBackends) {
  auto c = ideal_config(2000, 13);
  const auto ast = program(" sweep(-3.14159265, 3.14159265, 3)", "visibility=0.891");
  for (Backend b : {Backend::TimeDomain, Backend::Lindblad}) {
    c.backend = b;
    const auto result = run_sweep(ast, c);
    ASSERT_EQ(result.rows.size(), 3u);
    EXPECT_LT(result.rows[1].p_transmit_hat, 0.1);
    EXPECT_GT(result.rows[0].p_transmit_hat, 0.85);
  }
  c.dt = 0.01;
  EXPECT_THROW(run_sweep(ast, c), StepTooLarge);
}

TEST(Csv, RoundTripsThroughText) {
  const auto result = run_sweep(dsl::parse(slurp("reduced.qc")), ideal_config(1000, 7));
  const std::string text = format_csv(result);
  EXPECT_EQ(text.rfind(kHeader, 0), 0u);
  const auto back = parse_csv(text);
  ASSERT_EQ(back.rows.size(), result.rows.size());
  for (std::size_t k = 0; k < back.rows.size(); ++k) {
    EXPECT_NEAR(back.rows[k].phi, result.rows[k].phi, 1e-11);
    EXPECT_EQ(back.rows[k].count_a, result.rows[k].count_a);
    EXPECT_NEAR(back.rows[k].p_oracle, result.rows[k].p_oracle, 1e-11);
  }
  EXPECT_EQ(format_csv(back), text);
}

TEST(Csv, RejectsMalformedFiles) {
  const std::string good = std::string(kHeader) + "0,10,5,0,5,0.5,0.236593090512,0.763406909488,0.5\n";
  EXPECT_NO_THROW(parse_csv(good));
  EXPECT_THROW(parse_csv(""), MalformedCsv);
  EXPECT_THROW(parse_csv(kHeader), MalformedCsv);
  EXPECT_THROW(parse_csv("phi,n\n0,10\n"), MalformedCsv);
  EXPECT_THROW(parse_csv(std::string(kHeader) + "0,10,5,0,5,0.5,0.2,0.7\n"), MalformedCsv);
  EXPECT_THROW(parse_csv(std::string(kHeader) + "0,10,5,0,4,0.5,0.2,0.7,0.5\n"), MalformedCsv);
  EXPECT_THROW(parse_csv(std::string(kHeader) + "0,10,5,0,5,0.4,0.2,0.7,0.5\n"), MalformedCsv);
  EXPECT_THROW(parse_csv(std::string(kHeader) + "0,10,5,0,5,0.5,0.6,0.7,0.5\n"), MalformedCsv);
  EXPECT_THROW(parse_csv(std::string(kHeader) + "0,0,0,0,0,0,0,1,0.5\n"), MalformedCsv);
  EXPECT_THROW(parse_csv(std::string(kHeader) + "x,10,5,0,5,0.5,0.2,0.7,0.5\n"), MalformedCsv);
  EXPECT_THROW(parse_csv(std::string(kHeader) + "0,-10,5,0,5,0.5,0.2,0.7,0.5\n"), MalformedCsv);
}

TEST(Report, IdealVisibilityNearOne) {
  const auto rep = summarize(run_sweep(dsl::parse(slurp("reference.qc")), ideal_config(1000, 7)));
  EXPECT_EQ(rep.rows, 41u);
  EXPECT_NEAR(rep.visibility, 1.0, 0.02);
  EXPECT_GE(rep.ci_coverage, 0.8);
  const std::string text = format_report(rep);
  EXPECT_NE(text.find("fitted visibility: "), std::string::npos);
  EXPECT_NE(text.find("max |p_hat - p_oracle|: "), std::string::npos);
  EXPECT_NE(text.find("oracle inside 95% CI: "), std::string::npos);
}

TEST(Report, ReducedVisibility) {
  const auto rep = summarize(parse_csv(format_csv(run_sweep(dsl::parse(slurp("reduced.qc")), ideal_config(1000, 7)))));
  EXPECT_NEAR(rep.visibility, 0.891, 0.03);
}

TEST(Report, AllZeroGroundCountsIsAnErrorNotACrash) {
  const std::string text = std::string(kHeader) + "0,10,0,0,10,0,0,0.277532798085,0\n1,10,0,0,10,0,0,0.277532798085,0\n";
  EXPECT_THROW(summarize(parse_csv(text)), DomainError);
}

TEST(Report, KnownValues) {
  SweepResult r;
  r.rows.push_back({-1.0, 10, 2, 0, 8, 0.2, 0.05, 0.5, 0.3});
  r.rows.push_back({1.0, 10, 6, 0, 4, 0.6, 0.3, 0.85, 0.9});
  const auto rep = summarize(r);
  EXPECT_DOUBLE_EQ(rep.visibility, 0.4 / 0.8);
  EXPECT_DOUBLE_EQ(rep.max_abs_error, 0.3);
  EXPECT_DOUBLE_EQ(rep.ci_coverage, 0.5);
}

}  // namespace
}  // namespace qcopy
