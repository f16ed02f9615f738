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

#include <ostream>
#include <string>
#include <vector>

namespace qcopy::cli {

enum ExitCode : int {
  kSuccess = 0,
  kUsage = 1,
  kParseError = 2,
  kRuntimeError = 3,
};

/// Entry point of the `qcopy` tool. `args` excludes the program name.
///
///   qcopy parse <file>
///   qcopy compile <file> [--device <cfg>]
///   qcopy run <file> --backend ideal|timedomain|lindblad --shots N --seed S
///             [--dt D] [--readout] [--device <cfg>] -o out.csv
///   qcopy report out.csv
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qcopy::cli
