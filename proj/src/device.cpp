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

#include "qcopy/device.hpp"

#include <cmath>
#include <sstream>

#include "qcopy/errors.hpp"
#include "text.hpp"

namespace qcopy {

void DeviceSpec::validate() const {
  if (!std::isfinite(omega_ab) || !std::isfinite(omega_bc) || omega_ab <= 0.0 || omega_bc <= 0.0) {
    throw DomainError("transition frequencies must be positive");
  }
  if (omega_ab == omega_bc) throw DomainError("omega_ab equals omega_bc (zero anharmonicity)");
  if (!(t1 > 0.0)) throw DomainError("t1 must be positive");
  if (!(t2 > 0.0)) throw DomainError("t2 must be positive");
  if (t2 > 2.0 * t1) throw DomainError("t2 exceeds 2*t1");
}

double DeviceSpec::anharmonicity() const { return std::abs(omega_ab - omega_bc); }

namespace {

double require_double(std::string_view key, std::string_view value, std::size_t line) {
  auto v = text::parse_double(value);
  if (!v) {
    throw FormatError("device config line " + std::to_string(line) + ": bad number for " + std::string(key));
  }
  return *v;
}

std::array<IqPoint, 3> parse_centroids(std::string_view value, std::size_t line) {
  const auto points = text::split(value, ';');
  if (points.size() != 3) {
    throw FormatError("device config line " + std::to_string(line) + ": centroids needs three i,q pairs");
  }
  std::array<IqPoint, 3> out{};
  for (std::size_t k = 0; k < 3; ++k) {
    const auto iq = text::split(points[k], ',');
    if (iq.size() != 2) {
      throw FormatError("device config line " + std::to_string(line) + ": centroid must be i,q");
    }
    out[k] = {require_double("centroids", iq[0], line), require_double("centroids", iq[1], line)};
  }
  return out;
}

}  // namespace

DeviceSpec parse_device_config(std::string_view text, const DeviceSpec& base) {
  DeviceSpec dev = base;
  auto centroids = base.readout.centroids();
  double noise_sigma = base.readout.noise_sigma();

  std::size_t line_no = 0;
  for (std::string_view raw : text::lines(text)) {
    ++line_no;
    std::string_view line = raw;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = text::trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw FormatError("device config line " + std::to_string(line_no) + ": expected key=value");
    }
    const auto key = text::trim(line.substr(0, eq));
    const auto value = text::trim(line.substr(eq + 1));
    if (key == "omega_ab") {
      dev.omega_ab = require_double(key, value, line_no);
    } else if (key == "omega_bc") {
      dev.omega_bc = require_double(key, value, line_no);
    } else if (key == "t1") {
      dev.t1 = require_double(key, value, line_no);
    } else if (key == "t2") {
      dev.t2 = require_double(key, value, line_no);
    } else if (key == "noise_sigma") {
      noise_sigma = require_double(key, value, line_no);
    } else if (key == "centroids") {
      centroids = parse_centroids(value, line_no);
    } else {
      throw FormatError("device config line " + std::to_string(line_no) + ": unknown key '" + std::string(key) +
                        "'");
    }
  }
  dev.readout = ReadoutModel(centroids, noise_sigma);
  dev.validate();
  return dev;
}

std::string format_device_config(const DeviceSpec& dev) {
  std::ostringstream out;
  out << "omega_ab=" << text::shortest(dev.omega_ab) << "\n"
      << "omega_bc=" << text::shortest(dev.omega_bc) << "\n"
      << "t1=" << text::shortest(dev.t1) << "\n"
      << "t2=" << text::shortest(dev.t2) << "\n"
      << "centroids=";
  const auto& c = dev.readout.centroids();
  for (std::size_t k = 0; k < 3; ++k) {
    out << (k ? "; " : "") << text::shortest(c[k].i) << "," << text::shortest(c[k].q);
  }
  out << "\nnoise_sigma=" << text::shortest(dev.readout.noise_sigma()) << "\n";
  return out.str();
}

}  // namespace qcopy
