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

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace pw {

/// Regular sampling lattice: node(i0, i1, i2) = origin + i0*axes[0] + i1*axes[1] + i2*axes[2].
struct GridGeometry {
  Point3 origin{Point3::Zero()};
  std::array<Vec3, 3> axes{Vec3::Zero(), Vec3::Zero(), Vec3::Zero()};
  std::array<std::uint32_t, 3> dims{1, 1, 1};

  std::size_t size() const { return std::size_t{dims[0]} * dims[1] * dims[2]; }
  /// Axis 0 varies fastest.
  std::size_t flat(std::size_t i0, std::size_t i1, std::size_t i2 = 0) const {
    return i0 + dims[0] * (i1 + dims[1] * i2);
  }
  Point3 node(std::size_t i0, std::size_t i1, std::size_t i2 = 0) const {
    return origin + static_cast<double>(i0) * axes[0] + static_cast<double>(i1) * axes[1] +
           static_cast<double>(i2) * axes[2];
  }
  Point3 node(std::size_t flat_index) const;
  /// Number of axes with more than one node.
  int rank() const;

  /// Throws std::invalid_argument for zero dims or a zero step on an axis
  /// with more than one node.
  void validate() const;
};

/// Sampled field with physical axes. Values are stored per node with
/// `components` doubles each: 1 real, 2 complex (re, im), 3 vector.
struct GridField {
  GridGeometry geometry;
  int components = 1;
  std::vector<double> values;
  std::string units;  ///< at most 16 ASCII characters

  GridField() = default;
  GridField(const GridGeometry& g, int comps, std::string unit_tag);

  double& at(std::size_t node, int comp = 0) { return values[node * components + comp]; }
  double at(std::size_t node, int comp = 0) const { return values[node * components + comp]; }
};

namespace units {
inline constexpr const char* kDimensionless = "1";
inline constexpr const char* kPower = "Sigma";
inline constexpr const char* kFlux = "Sigma/m^2";
inline constexpr const char* kSpectral = "Sigma/R^2";
inline constexpr const char* kRadiance = "Sigma/(sr*m^2)";
inline constexpr const char* kCount = "count";
}  // namespace units

/// Binary layout (little-endian):
///   "PGWF" | u16 version | u32 dims[3] | f64 origin[3], axis0[3], axis1[3], axis2[3]
///   | char units[16] (NUL padded) | f64 values...
/// The component count is recovered from the payload length.
inline constexpr std::uint16_t kGridFieldVersion = 1;
inline constexpr std::size_t kGridFieldHeaderBytes = 4 + 2 + 12 + 96 + 16;

void write_grid_field(const GridField& field, std::ostream& out);
void write_grid_field(const GridField& field, const std::filesystem::path& path);
GridField read_grid_field(std::istream& in);
GridField read_grid_field(const std::filesystem::path& path);

/// Writes a binary PGM/PPM heat map of component 0 on a dB scale relative to
/// the field maximum, clipped at `floor_db`. 2D fields only.
void write_heatmap(const GridField& field, const std::filesystem::path& path, double floor_db = -40.0,
                   bool symmetric = false);

}  // namespace pw
