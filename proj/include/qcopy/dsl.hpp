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

// Experiment description language. A program describes the fixed topology
// source -> 1:1 beamsplitter -> phase delay -> thin absorber -> detectors:
//
//   program    := source bs phase absorber detectors
//   source     := "source" IDENT
//   bs         := "beamsplitter" IDENT "ratio=" NUMBER
//   phase      := "phase" IDENT ("=" NUMBER | "sweep(" NUMBER "," NUMBER "," INT ")")
//   absorber   := "absorber" IDENT (("t=" NUMBER "r=" NUMBER) | "visibility=" NUMBER)
//   detectors  := "detectors" IDENT IDENT
//
// Whitespace (including newlines) only separates tokens; `#` starts a comment.

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "qcopy/device.hpp"
#include "qcopy/pulse.hpp"

namespace qcopy::dsl {

struct Beamsplitter {
  std::string name;
  double ratio = 0.5;
  friend bool operator==(const Beamsplitter&, const Beamsplitter&) = default;
};

struct PhaseSweep {
  double start = 0.0;
  double stop = 0.0;
  int points = 0;

  /// Evenly spaced grid including both ends.
  std::vector<double> grid() const;
  friend bool operator==(const PhaseSweep&, const PhaseSweep&) = default;
};

struct PhaseDelay {
  std::string name;
  std::variant<double, PhaseSweep> setting;

  std::vector<double> values() const;
  friend bool operator==(const PhaseDelay&, const PhaseDelay&) = default;
};

struct FilmAmplitudes {
  double t = 0.5;
  double r = -0.5;
  friend bool operator==(const FilmAmplitudes&, const FilmAmplitudes&) = default;
};

struct FringeVisibility {
  double visibility = 1.0;
  friend bool operator==(const FringeVisibility&, const FringeVisibility&) = default;
};

struct Absorber {
  std::string name;
  std::variant<FilmAmplitudes, FringeVisibility> model;
  friend bool operator==(const Absorber&, const Absorber&) = default;
};

struct Detectors {
  std::string first;
  std::string second;
  friend bool operator==(const Detectors&, const Detectors&) = default;
};

using Element = std::variant<Beamsplitter, PhaseDelay, Absorber, Detectors>;

struct ExperimentAst {
  std::string source;
  std::vector<Element> elements;

  friend bool operator==(const ExperimentAst&, const ExperimentAst&) = default;
};

/// Typed view of a valid AST.
struct Topology {
  const Beamsplitter& beamsplitter;
  const PhaseDelay& phase;
  const Absorber& absorber;
  const Detectors& detectors;
};

/// Throws UnsupportedTopology unless the AST has the fixed
/// beamsplitter/phase/absorber/detectors sequence with valid parameters.
Topology topology(const ExperimentAst& ast);

/// Throws SyntaxError or SemanticError with the offending line and column.
ExperimentAst parse(std::string_view text);

/// Canonical text; parse(pretty_print(a)) == a for every valid AST.
std::string pretty_print(const ExperimentAst& ast);

struct CompileOptions {
  double pulse_duration = 0.6;  // us
  double gap = 0.04;            // us between consecutive pulses

  void validate() const;
};

struct CompiledPoint {
  double phi = 0.0;
  PulseSchedule schedule;
};

/// Second-pulse amplitude scale for an absorber: 1 for the ideal film,
/// otherwise derived from the film's (or the given) fringe visibility.
double amp_scale(const Absorber& absorber);

/// Transmission predicted without the transmon: the optical film model for
/// t/r absorbers, the closed-form Ramsey law for visibility absorbers.
double oracle_transmission(const Absorber& absorber, double phi);

/// One three-pulse schedule per phase value: pi/2 at omega_ab (phase 0),
/// amp_scale * pi/2 at omega_ab (phase phi), pi at omega_bc (phase 0).
std::vector<CompiledPoint> compile(const ExperimentAst& ast, const DeviceSpec& dev,
                                   const CompileOptions& opts = CompileOptions{});

}  // namespace qcopy::dsl
