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
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>

#include "qcopy/backends.hpp"
#include "qcopy/dsl.hpp"
#include "qcopy/errors.hpp"
#include "qcopy/optics.hpp"

namespace qcopy::dsl {
namespace {

namespace fs = std::filesystem;
constexpr double kPi = std::numbers::pi;

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string reference() { return slurp(fs::path(QCOPY_TEST_DATA_DIR) / "reference.qc"); }

std::string program(const std::string& phase, const std::string& absorber) {
  return "source A\nbeamsplitter bs1 ratio=0.5\nphase phi" + phase + "\nabsorber film " + absorber +
         "\ndetectors SPD-A SPD-B\n";
}

template <typename E>
E expect_error(const std::string& text) {
  try {
    parse(text);
  } catch (const E& e) {
    return e;
  } catch (const std::exception& e) {
    ADD_FAILURE() << "wrong exception: " << e.what();
    throw;
  }
  ADD_FAILURE() << "no exception for:\n" << text;
  throw std::logic_error("unreachable");
}

TEST(Parse, ReferenceProgram) {
  const auto ast = parse(reference());
  EXPECT_EQ(ast.source, "A");
  const auto topo = topology(ast);
  EXPECT_EQ(topo.beamsplitter.name, "bs1");
  const auto& sweep = std::get<PhaseSweep>(topo.phase.setting);
  EXPECT_EQ(sweep.points, 41);
  EXPECT_EQ(sweep.start, -3.14159265);
  EXPECT_EQ(sweep.stop, 3.14159265);
  EXPECT_EQ(std::get<FilmAmplitudes>(topo.absorber.model), (FilmAmplitudes{0.5, -0.5}));
  EXPECT_EQ(topo.detectors.first, "SPD-A");
  EXPECT_EQ(topo.detectors.second, "SPD-B");
}

TEST(Parse, PassivityViolation) {
  const auto e = expect_error<SemanticError>(program("=0", "t=0.9 r=0.9"));
  EXPECT_NE(std::string(e.what()).find("eigenmode gain (|t+r|^2 = 3.24 > 1)"), std::string::npos) << e.what();
  EXPECT_EQ(e.line(), 4);
}

TEST(Parse, EmptyInputMissesSource) {
  const auto e = expect_error<SyntaxError>("");
  EXPECT_NE(std::string(e.what()).find("missing source"), std::string::npos);
  expect_error<SyntaxError>("   # only a comment\n");
}

TEST(Parse, SyntaxErrorsCarryPosition) {
  const auto e = expect_error<SyntaxError>("source A\nbeamsplitter bs1 ratio=0.5\nphase phi sweep(0, 1 3)\n");
  EXPECT_EQ(e.line(), 3);
  EXPECT_EQ(e.column(), 22);
  expect_error<SyntaxError>("source A\nbeamsplitter bs1 ratio=0.5 $\n");
  expect_error<SyntaxError>("source A\nmirror m1\n");
  expect_error<SyntaxError>(program(" sweep(0, 1, 2.5)", "t=0.5 r=-0.5"));
  expect_error<SyntaxError>(program("=0", "gain=2"));
  expect_error<SyntaxError>(program("=1.2.3", "t=0.5 r=-0.5"));
}

TEST(Parse, SemanticErrors) {
  expect_error<SemanticError>("source A\nbeamsplitter bs1 ratio=0.3\nphase phi=0\nabsorber f t=0.5 r=-0.5\ndetectors X Y\n");
  expect_error<SemanticError>("source A\nphase phi=0\nbeamsplitter bs1 ratio=0.5\nabsorber f t=0.5 r=-0.5\ndetectors X Y\n");
  expect_error<SemanticError>("source A\nbeamsplitter bs1 ratio=0.5\nphase phi=0\nabsorber f t=0.5 r=-0.5\n");
  expect_error<SemanticError>(
      "source A\nbeamsplitter bs1 ratio=0.5\nphase phi=0\nabsorber f t=0.5 r=-0.5\ndetectors X Y\ndetectors X Y\n");
  expect_error<SemanticError>("source A\nsource B\n");
  expect_error<SemanticError>(program("=0", "t=0 r=0"));
  expect_error<SemanticError>(program("=0", "visibility=1.5"));
  expect_error<SemanticError>(program(" sweep(0, 1, 1)", "t=0.5 r=-0.5"));
  expect_error<SemanticError>("source A\nbeamsplitter bs1 ratio=0.5\nphase phi=0\nabsorber f t=0.5 r=-0.5\ndetectors X X\n");
}

TEST(PrettyPrint, Canonicalizes) {
  const auto ast = parse("source A\nbeamsplitter bs1 ratio=0.5\nphase  phi = 0.5\nabsorber film t=0.5 r=-0.5\ndetectors X Y\n");
  const std::string text = pretty_print(ast);
  EXPECT_NE(text.find("\nphase phi=0.5\n"), std::string::npos) << text;
  EXPECT_EQ(text, "source A\nbeamsplitter bs1 ratio=0.5\nphase phi=0.5\nabsorber film t=0.5 r=-0.5\ndetectors X Y\n");
}

TEST(PrettyPrint, KeepsSweepVerbatim) {
  const std::string text = pretty_print(parse(reference()));
  EXPECT_NE(text.find("phase phi sweep(-3.14159265, 3.14159265, 41)"), std::string::npos) << text;
  EXPECT_EQ(parse(text), parse(reference()));
}

TEST(Compile, IdealAbsorberAtPi) {
  const auto points = compile(parse(program("=3.141592653589793", "t=0.5 r=-0.5")), DeviceSpec{});
  ASSERT_EQ(points.size(), 1u);
  const auto& ins = points[0].schedule.instructions();
  ASSERT_EQ(ins.size(), 3u);
  const DeviceSpec dev;
  EXPECT_EQ(ins[0].carrier_freq, dev.omega_ab);
  EXPECT_EQ(ins[1].carrier_freq, dev.omega_ab);
  EXPECT_EQ(ins[2].carrier_freq, dev.omega_bc);
  EXPECT_DOUBLE_EQ(ins[0].envelope.area, kPi / 2);
  EXPECT_DOUBLE_EQ(ins[1].envelope.area, kPi / 2);
  EXPECT_DOUBLE_EQ(ins[2].envelope.area, kPi);
  EXPECT_EQ(ins[0].phase, 0.0);
  EXPECT_DOUBLE_EQ(ins[1].phase, kPi);
  EXPECT_EQ(ins[2].phase, 0.0);
  EXPECT_DOUBLE_EQ(ins[0].start_time, 0.0);
  EXPECT_DOUBLE_EQ(ins[1].start_time, 0.64);
  EXPECT_DOUBLE_EQ(ins[2].start_time, 1.28);
  for (const auto& i : ins) {
    EXPECT_DOUBLE_EQ(i.envelope.duration, 0.6);
    EXPECT_DOUBLE_EQ(i.envelope.sigma, 0.1);
  }
}

TEST(Compile, ReducedVisibilityScalesSecondPulse) {
  const auto points = compile(parse(program("=0", "visibility=0.891")), DeviceSpec{});
  EXPECT_NEAR(points[0].schedule.instructions()[1].envelope.area, 0.7 * kPi / 2, 1e-4);
  char v[32];
  std::snprintf(v, sizeof v, "visibility=%.17g", std::sin(0.7 * kPi / 2));
  const auto exact = compile(parse(program("=0", v)), DeviceSpec{});
  EXPECT_NEAR(exact[0].schedule.instructions()[1].envelope.area, 0.7 * kPi / 2, 1e-6);
}

TEST(Compile, FilmAbsorberUsesItsFringeVisibility) {
  const auto ast = parse(program("=0", "t=0.5 r=-0.3"));
  const double v = optics::fringe_visibility(optics::AbsorberParams(0.5, -0.3));
  EXPECT_DOUBLE_EQ(amp_scale(topology(ast).absorber), optics::visibility_to_amp_scale(v));
  EXPECT_EQ(amp_scale(topology(parse(reference())).absorber), 1.0);
}

TEST(Compile, SweepEnumeratesGrid) {
  const auto points = compile(parse(program(" sweep(-3.141592653589793, 3.141592653589793, 41)", "t=0.5 r=-0.5")),
                              DeviceSpec{});
  ASSERT_EQ(points.size(), 41u);
  EXPECT_EQ(points.front().phi, -kPi);
  EXPECT_EQ(points.back().phi, kPi);
  EXPECT_EQ(points[20].phi, 0.0);
  for (std::size_t k = 0; k < points.size(); ++k) {
    EXPECT_NEAR(points[k].phi, -kPi + 2 * kPi * k / 40.0, 1e-15);
    EXPECT_EQ(points[k].schedule.instructions()[1].phase, points[k].phi);
  }
}

TEST(Compile, OptionsAndDevice) {
  DeviceSpec dev;
  dev.omega_ab = 5.0;
  dev.omega_bc = 4.7;
  const auto points = compile(parse(program("=0", "t=0.5 r=-0.5")), dev, {0.2, 0.0});
  const auto& ins = points[0].schedule.instructions();
  EXPECT_EQ(ins[0].carrier_freq, 5.0);
  EXPECT_EQ(ins[2].carrier_freq, 4.7);
  EXPECT_DOUBLE_EQ(ins[2].start_time, 0.4);
  EXPECT_THROW(compile(parse(reference()), dev, {0.0, 0.04}), DomainError);
  EXPECT_THROW(compile(parse(reference()), dev, {0.6, -1.0}), DomainError);
}

TEST(Topology, RejectsHandBuiltAstsOutsidePattern) {
  auto ast = parse(reference());
  std::swap(ast.elements[0], ast.elements[1]);
  EXPECT_THROW(topology(ast), UnsupportedTopology);
  EXPECT_THROW(compile(ast, DeviceSpec{}), UnsupportedTopology);

  ast = parse(reference());
  ast.elements.pop_back();
  EXPECT_THROW(topology(ast), UnsupportedTopology);

  ast = parse(reference());
  std::get<Beamsplitter>(ast.elements[0]).ratio = 0.7;
  EXPECT_THROW(topology(ast), UnsupportedTopology);

  ast = parse(reference());
  std::get<Absorber>(ast.elements[2]).model = FilmAmplitudes{0.9, 0.9};
  EXPECT_THROW(topology(ast), UnsupportedTopology);
}

TEST(OracleTransmission, FilmAndVisibility) {
  const auto ideal = topology(parse(reference())).absorber;
  EXPECT_NEAR(oracle_transmission(ideal, 1.0), std::pow(std::sin(0.5), 2), 1e-15);
  const auto reduced = parse(program("=0", "visibility=0.891"));
  const auto& abs = topology(reduced).absorber;
  EXPECT_NEAR(oracle_transmission(abs, 0.0), ramsey_closed_form(amp_scale(abs), 0.0).transmit, 1e-15);
}

// Properties

TEST(DslProperties, CorpusRoundTrips) {
  int count = 0;
  for (const auto& entry : fs::directory_iterator(fs::path(QCOPY_TEST_DATA_DIR) / "corpus")) {
    const auto ast = parse(slurp(entry.path()));
    const std::string canonical = pretty_print(ast);
    EXPECT_EQ(parse(canonical), ast) << entry.path();
    EXPECT_EQ(pretty_print(parse(canonical)), canonical) << entry.path();
    ++count;
  }
  EXPECT_EQ(count, 20);
}

TEST(DslProperties, GeneratedProgramsRoundTrip) {
  std::mt19937_64 eng(8);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const char* names[] = {"a", "bs_1", "x-y", "Film", "SPD-A", "q9"};
  auto name = [&] { return std::string(names[eng() % 6]); };
  for (int n = 0; n < 500; ++n) {
    ExperimentAst ast;
    ast.source = name();
    ast.elements.push_back(Beamsplitter{name(), 0.5});
    if (eng() % 2) {
      ast.elements.push_back(PhaseDelay{name(), u(eng) * 10});
    } else {
      ast.elements.push_back(PhaseDelay{name(), PhaseSweep{u(eng) * 4, u(eng) * 4, 2 + static_cast<int>(eng() % 200)}});
    }
    if (eng() % 2) {
      const double ss = std::abs(u(eng));
      const double sa = 1e-3 + 0.99 * std::abs(u(eng));
      ast.elements.push_back(Absorber{name(), FilmAmplitudes{(ss + sa) / 2, (ss - sa) / 2}});
    } else {
      ast.elements.push_back(Absorber{name(), FringeVisibility{std::abs(u(eng))}});
    }
    ast.elements.push_back(Detectors{"D1", name() + "2"});
    ASSERT_NO_THROW(topology(ast));
    EXPECT_EQ(parse(pretty_print(ast)), ast) << pretty_print(ast);
  }
}

TEST(DslProperties, CompileIsDeterministic) {
  const auto ast = parse(slurp(fs::path(QCOPY_TEST_DATA_DIR) / "reduced.qc"));
  const auto a = compile(ast, DeviceSpec{});
  const auto b = compile(parse(pretty_print(ast)), DeviceSpec{});
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t k = 0; k < a.size(); ++k) {
    EXPECT_EQ(serialize_schedule(a[k].schedule), serialize_schedule(b[k].schedule));
  }
}

TEST(DslProperties, IdealCompileMatchesOpticalOracle) {
  const auto ast = parse(program(" sweep(-3.141592653589793, 3.141592653589793, 101)", "t=0.5 r=-0.5"));
  const auto abs = optics::AbsorberParams::ideal();
  for (const auto& point : compile(ast, DeviceSpec{})) {
    const double p = probabilities(run_ideal(point.schedule, DeviceSpec{})).a;
    EXPECT_NEAR(p, optics::detector_probabilities(abs, point.phi).transmission(), 1e-12);
  }
}

}  // namespace
}  // namespace qcopy::dsl
