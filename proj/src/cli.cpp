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

#include "qcopy/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <sstream>

#include "qcopy/dsl.hpp"
#include "qcopy/errors.hpp"
#include "qcopy/sweep.hpp"
#include "text.hpp"

namespace qcopy::cli {

namespace {

class IoError : public Error {
 public:
  using Error::Error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path + "'");
  out << contents;
  if (!out) throw IoError("failed writing '" + path + "'");
}

DeviceSpec load_device(const std::string& path) {
  DeviceSpec dev;
  if (!path.empty()) dev = parse_device_config(read_file(path));
  dev.validate();
  return dev;
}

struct Options {
  std::string program;
  std::string device;
  std::string backend = "ideal";
  std::size_t shots = 1000;
  std::uint64_t seed = 0;
  double dt = 0.0;
  bool readout = false;
  bool blind = false;
  std::size_t threads = 0;
  std::string output;
  std::string shot_log;
  std::string csv;
  double pulse_duration = 0.6;
  double gap = 0.04;
};

int cmd_parse(const Options& o, std::ostream& out) {
  out << dsl::pretty_print(dsl::parse(read_file(o.program)));
  return kSuccess;
}

int cmd_compile(const Options& o, std::ostream& out) {
  const auto ast = dsl::parse(read_file(o.program));
  const DeviceSpec dev = load_device(o.device);
  const auto points = dsl::compile(ast, dev, {o.pulse_duration, o.gap});
  for (std::size_t k = 0; k < points.size(); ++k) {
    if (k) out << "\n";
    out << "# phi=" << text::significant(points[k].phi, 17) << "\n" << serialize_schedule(points[k].schedule);
  }
  return kSuccess;
}

int cmd_run(const Options& o, std::ostream& out, std::ostream& err) {
  const auto ast = dsl::parse(read_file(o.program));
  RunConfig config;
  const auto backend = parse_backend(o.backend);
  if (!backend) {
    err << "unknown backend '" << o.backend << "' (expected ideal, timedomain or lindblad)\n";
    return kUsage;
  }
  config.backend = *backend;
  config.shots = o.shots;
  config.seed = o.seed;
  if (o.dt > 0.0) config.dt = o.dt;
  config.readout = o.readout;
  config.blind = o.blind;
  config.threads = o.threads;
  config.device = load_device(o.device);
  config.compile = {o.pulse_duration, o.gap};

  const SweepResult result = run_sweep(ast, config, !o.shot_log.empty());
  const std::string csv = format_csv(result);
  if (o.output.empty() || o.output == "-") {
    out << csv;
  } else {
    write_file(o.output, csv);
  }
  if (!o.shot_log.empty()) write_file(o.shot_log, format_shot_log(result));
  return kSuccess;
}

int cmd_report(const Options& o, std::ostream& out) {
  out << format_report(summarize(parse_csv(read_file(o.csv))));
  return kSuccess;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Quantum copy of a single-photon coherent absorption experiment on a simulated transmon", "qcopy"};
  app.require_subcommand(1);
  Options o;

  auto* parse = app.add_subcommand("parse", "Parse a program and print its canonical form");
  parse->add_option("file", o.program, "Experiment program")->required();

  auto* compile = app.add_subcommand("compile", "Compile a program to pulse schedules");
  compile->add_option("file", o.program, "Experiment program")->required();
  compile->add_option("--device", o.device, "Device config (key=value)");
  compile->add_option("--pulse-duration", o.pulse_duration, "Pulse duration in us")->check(CLI::PositiveNumber);
  compile->add_option("--gap", o.gap, "Gap between pulses in us")->check(CLI::NonNegativeNumber);

  auto* runc = app.add_subcommand("run", "Run the phase sweep and write a CSV");
  runc->add_option("file", o.program, "Experiment program")->required();
  runc->add_option("--backend", o.backend, "ideal | timedomain | lindblad");
  runc->add_option("--shots", o.shots, "Shots per phase point")->check(CLI::PositiveNumber);
  runc->add_option("--seed", o.seed, "Base RNG seed");
  runc->add_option("--dt", o.dt, "Integrator step in us (default: pulse duration / 2000)")
      ->check(CLI::PositiveNumber);
  runc->add_flag("--readout", o.readout, "Classify shots through the simulated IQ readout");
  runc->add_flag("--blind", o.blind, "Omit true labels from the shot log");
  runc->add_option("--device", o.device, "Device config (key=value)");
  runc->add_option("--threads", o.threads, "Worker threads (0: all cores)");
  runc->add_option("--shot-log", o.shot_log, "Write per-shot records to this CSV");
  runc->add_option("--pulse-duration", o.pulse_duration, "Pulse duration in us")->check(CLI::PositiveNumber);
  runc->add_option("--gap", o.gap, "Gap between pulses in us")->check(CLI::NonNegativeNumber);
  runc->add_option("-o,--output", o.output, "Output CSV path ('-' for stdout)");

  auto* report = app.add_subcommand("report", "Summarize a sweep CSV");
  report->add_option("csv", o.csv, "CSV produced by 'qcopy run'")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsage;
  }

  try {
    if (*parse) return cmd_parse(o, out);
    if (*compile) return cmd_compile(o, out);
    if (*runc) return cmd_run(o, out, err);
    if (*report) return cmd_report(o, out);
  } catch (const SourceError& e) {
    err << o.program << ":" << e.line() << ":" << e.column() << ": " << e.what() << "\n";
    return kParseError;
  } catch (const UnsupportedTopology& e) {
    err << "error: " << e.what() << "\n";
    return kParseError;
  } catch (const FormatError& e) {
    err << "error: " << e.what() << "\n";
    return kParseError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kRuntimeError;
  }
  return kUsage;
}

}  // namespace qcopy::cli
