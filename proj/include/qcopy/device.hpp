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

#include <string>
#include <string_view>

#include "qcopy/readout.hpp"

namespace qcopy {

/// Transmon parameters. Frequencies in GHz, times in microseconds.
struct DeviceSpec {
  double omega_ab = 4.97;
  double omega_bc = 4.62;
  double t1 = 30.0;
  double t2 = 30.0;
  ReadoutModel readout = ReadoutModel::default_model();

  /// Throws DomainError unless omega_ab != omega_bc, t1 > 0, 0 < t2 <= 2 t1.
  void validate() const;

  /// Anharmonic gap |omega_ab - omega_bc| in GHz.
  double anharmonicity() const;
};

/// Applies `key = value` lines on top of `base`. Recognised keys: omega_ab,
/// omega_bc, t1, t2, noise_sigma and centroids (`iA,qA; iB,qB; iC,qC`).
/// Blank lines and `#` comments are ignored. Throws FormatError on unknown
/// keys or unparsable values, DomainError if the result is invalid.
DeviceSpec parse_device_config(std::string_view text, const DeviceSpec& base = DeviceSpec{});

std::string format_device_config(const DeviceSpec& dev);

}  // namespace qcopy
