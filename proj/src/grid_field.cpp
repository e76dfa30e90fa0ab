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

#include "polywigner/grid_field.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace pw {

Point3 GridGeometry::node(std::size_t flat_index) const {
  const std::size_t i0 = flat_index % dims[0];
  const std::size_t rest = flat_index / dims[0];
  return node(i0, rest % dims[1], rest / dims[1]);
}

int GridGeometry::rank() const {
  return static_cast<int>(std::count_if(dims.begin(), dims.end(), [](auto d) { return d > 1; }));
}

void GridGeometry::validate() const {
  for (int a = 0; a < 3; ++a) {
    if (dims[a] < 1) throw std::invalid_argument("grid dimension must be at least 1");
    if (dims[a] > 1 && !(axes[a].norm() > 0.0))
      throw std::invalid_argument("grid step must be nonzero on axis " + std::to_string(a));
    if (!axes[a].allFinite() || !origin.allFinite())
      throw std::invalid_argument("grid geometry must be finite");
  }
}

GridField::GridField(const GridGeometry& g, int comps, std::string unit_tag)
    : geometry(g), components(comps), units(std::move(unit_tag)) {
  g.validate();
  if (comps < 1 || comps > 3) throw std::invalid_argument("grid field must have 1-3 components");
  if (units.size() > 16) throw std::invalid_argument("units tag longer than 16 characters");
  values.assign(g.size() * static_cast<std::size_t>(comps), 0.0);
}

namespace {

constexpr char kMagic[4] = {'P', 'G', 'W', 'F'};

template <typename T>
void put_le(std::ostream& out, T value) {
  using U = std::conditional_t<sizeof(T) == 8, std::uint64_t,
                               std::conditional_t<sizeof(T) == 4, std::uint32_t, std::uint16_t>>;
  U bits = std::bit_cast<U>(value);
  char bytes[sizeof(T)];
  for (std::size_t i = 0; i < sizeof(T); ++i) {
    bytes[i] = static_cast<char>(bits & 0xffu);
    bits = static_cast<U>(bits >> 8);
  }
  out.write(bytes, sizeof(T));
}

template <typename T>
T get_le(std::istream& in) {
  using U = std::conditional_t<sizeof(T) == 8, std::uint64_t,
                               std::conditional_t<sizeof(T) == 4, std::uint32_t, std::uint16_t>>;
  unsigned char bytes[sizeof(T)];
  if (!in.read(reinterpret_cast<char*>(bytes), sizeof(T)))
    throw Error(Error::Category::Io, "truncated grid field header");
  U bits = 0;
  for (std::size_t i = sizeof(T); i-- > 0;) bits = static_cast<U>((bits << 8) | bytes[i]);
  return std::bit_cast<T>(bits);
}

}  // namespace

void write_grid_field(const GridField& field, std::ostream& out) {
  const auto& g = field.geometry;
  if (field.values.size() != g.size() * static_cast<std::size_t>(field.components))
    throw std::invalid_argument("grid field payload does not match its geometry");
  out.write(kMagic, 4);
  put_le<std::uint16_t>(out, kGridFieldVersion);
  for (auto d : g.dims) put_le<std::uint32_t>(out, d);
  for (int c = 0; c < 3; ++c) put_le<double>(out, g.origin[c]);
  for (const auto& a : g.axes)
    for (int c = 0; c < 3; ++c) put_le<double>(out, a[c]);
  char tag[16] = {};
  std::copy_n(field.units.begin(), std::min<std::size_t>(16, field.units.size()), tag);
  out.write(tag, 16);
  for (double v : field.values) put_le<double>(out, v);
  if (!out) throw Error(Error::Category::Io, "failed to write grid field");
}

void write_grid_field(const GridField& field, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Error::Category::Io, "cannot open " + path.string() + " for writing");
  write_grid_field(field, out);
}

GridField read_grid_field(std::istream& in) {
  char magic[4];
  if (!in.read(magic, 4) || !std::equal(magic, magic + 4, kMagic))
    throw Error(Error::Category::Io, "not a PGWF grid field");
  const auto version = get_le<std::uint16_t>(in);
  if (version != kGridFieldVersion)
    throw Error(Error::Category::Io, "unsupported grid field version " + std::to_string(version));
  GridGeometry g;
  for (auto& d : g.dims) d = get_le<std::uint32_t>(in);
  for (int c = 0; c < 3; ++c) g.origin[c] = get_le<double>(in);
  for (auto& a : g.axes)
    for (int c = 0; c < 3; ++c) a[c] = get_le<double>(in);
  char tag[16];
  if (!in.read(tag, 16)) throw Error(Error::Category::Io, "truncated grid field header");
  std::string units(tag, std::find(tag, tag + 16, '\0'));

  std::vector<double> payload;
  while (true) {
    unsigned char bytes[8];
    in.read(reinterpret_cast<char*>(bytes), 8);
    if (in.gcount() == 0) break;
    if (in.gcount() != 8) throw Error(Error::Category::Io, "grid field payload is not a whole number of f64");
    std::uint64_t bits = 0;
    for (int i = 8; i-- > 0;) bits = (bits << 8) | bytes[i];
    payload.push_back(std::bit_cast<double>(bits));
  }
  const std::size_t n = g.size();
  if (n == 0 || payload.size() % n != 0 || payload.size() / n < 1 || payload.size() / n > 3)
    throw Error(Error::Category::Io, "grid field payload length does not match its dims");
  GridField f;
  f.geometry = g;
  f.components = static_cast<int>(payload.size() / n);
  f.units = std::move(units);
  f.values = std::move(payload);
  try {
    g.validate();
  } catch (const std::invalid_argument& e) {
    throw Error(Error::Category::Io, std::string("invalid grid geometry: ") + e.what());
  }
  return f;
}

GridField read_grid_field(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Error::Category::Io, "cannot open " + path.string());
  return read_grid_field(in);
}

void write_heatmap(const GridField& field, const std::filesystem::path& path, double floor_db,
                   bool symmetric) {
  const auto& g = field.geometry;
  if (g.dims[2] != 1) throw std::invalid_argument("heat maps need a 2D field");
  const std::size_t w = g.dims[0], h = g.dims[1];
  auto value = [&](std::size_t n) {
    if (field.components == 3) {
      return Vec3(field.at(n, 0), field.at(n, 1), field.at(n, 2)).norm();
    }
    return field.at(n, 0);
  };
  double peak = 0.0;
  for (std::size_t n = 0; n < g.size(); ++n) peak = std::max(peak, std::abs(value(n)));

  // Map to [0, 1]: dB relative to peak, or a symmetric log about 0.5.
  auto level = [&](double v) {
    if (!(peak > 0.0)) return symmetric ? 0.5 : 0.0;
    const double db = 10.0 * std::log10(std::max(std::abs(v) / peak, 1e-300));
    const double mag = std::clamp(1.0 - db / floor_db, 0.0, 1.0);
    if (!symmetric) return mag;
    return 0.5 + (v < 0 ? -0.5 : 0.5) * mag;
  };

  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Error::Category::Io, "cannot open " + path.string() + " for writing");
  out << (symmetric ? "P6" : "P5") << '\n' << w << ' ' << h << "\n255\n";
  // Image rows run top to bottom, so emit axis 1 in reverse.
  for (std::size_t r = 0; r < h; ++r) {
    const std::size_t j = h - 1 - r;
    for (std::size_t i = 0; i < w; ++i) {
      const double t = level(value(g.flat(i, j)));
      if (!symmetric) {
        out.put(static_cast<char>(std::lround(255.0 * t)));
      } else {
        // blue (negative) - white - red (positive)
        const double s = 2.0 * std::abs(t - 0.5);
        const auto hi = static_cast<char>(255);
        const auto lo = static_cast<char>(std::lround(255.0 * (1.0 - s)));
        if (t >= 0.5) {
          out.put(hi); out.put(lo); out.put(lo);
        } else {
          out.put(lo); out.put(lo); out.put(hi);
        }
      }
    }
  }
  if (!out) throw Error(Error::Category::Io, "failed to write " + path.string());
}

}  // namespace pw
