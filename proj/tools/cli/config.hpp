// SPDX-License-Identifier: Apache-2.0
//
// polywigner: analytic phase-space transforms for polygonal apertures
// Copyright (C) 2026 The polywigner authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include "polywigner/common.hpp"
#include "polywigner/oracles.hpp"
#include "polywigner/phase_space.hpp"
#include "polywigner/radiometry.hpp"

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace pw::cli {

using json = nlohmann::json;

class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what) : Error(Category::Config, what) {}
};

struct Conventions {
  KernelSign sign = KernelSign::Negative;
  SliceConvention slice = SliceConvention::Consistent;
  bool center_position_slices = true;

  PhaseSpaceOptions phase_space() const;
  json to_json() const;
};

struct OutputSpec {
  std::filesystem::path directory = ".";
  std::string prefix = "polywigner";
  bool heatmap = true;
};

struct SceneConfig {
  std::vector<Polygon> radiators;
  double wavelength_m = 0.0;
  std::string illumination = "uniform_unity";
  std::uint64_t seed = 1;
  std::size_t n_samples = 1000;
  QuadratureSpec quadrature;
  OutputSpec output;
  Conventions conventions;
  json source;  ///< the document as read, for manifests

  PolygonSet radiator_set() const;
  TransmitterScene scene() const;
};

/// Parses and validates a scene document. Unknown keys anywhere are rejected;
/// messages name the offending field path.
SceneConfig parse_config(const json& doc);

/// Reads a JSON file; syntax errors report line and column.
json read_json_file(const std::filesystem::path& path);

/// Lowercase hex SHA-256 of the canonical (compact, key-sorted) dump.
std::string config_hash(const json& doc);

}  // namespace pw::cli
