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

// Shapes and helpers shared by the unit and acceptance tests.

#pragma once

#include "polywigner/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <utility>
#include <vector>

namespace pw::fixtures {

inline Polygon polygon_xy(std::initializer_list<Vec2> pts, double z = 0.0) {
  std::vector<Point3> v;
  for (const auto& p : pts) v.emplace_back(p.x(), p.y(), z);
  return validate_polygon(v, Vec3::UnitZ()).polygon;
}

inline Polygon rect(double cx, double cy, double w, double h, double z = 0.0) {
  return polygon_xy({{cx - w / 2, cy - h / 2}, {cx + w / 2, cy - h / 2}, {cx + w / 2, cy + h / 2}, {cx - w / 2, cy + h / 2}},
                    z);
}

inline PolygonSet unit_square() { return PolygonSet({rect(0, 0, 1, 1)}); }

inline PolygonSet two_squares(double gap_center = 10.0) {
  return PolygonSet({rect(0, 0, 1, 1), rect(gap_center, 0, 1, 1)});
}

/// L-shaped hexagon: 2x2 square with the upper-right 1x1 quadrant removed.
inline Polygon l_hexagon() { return polygon_xy({{0, 0}, {2, 0}, {2, 1}, {1, 1}, {1, 2}, {0, 2}}); }

/// Chevron pointing along +x, `s` metres per unit (default: millimetres).
inline Polygon chevron(double cx, double cy, double s = 1e-3) {
  const std::initializer_list<Vec2> unit = {{-6, -8}, {-2, -8}, {4, 0}, {-2, 8}, {-6, 8}, {0, 0}};
  std::vector<Point3> v;
  for (const auto& p : unit) v.emplace_back(cx + s * p.x(), cy + s * p.y(), 0.0);
  return validate_polygon(v, Vec3::UnitZ()).polygon;
}

/// Two chevrons 16 units apart along x.
inline PolygonSet chevron_pair(double s = 1e-3) {
  return PolygonSet({chevron(-8 * s, 0, s), chevron(8 * s, 0, s)});
}

/// 10 mm x 10 mm transmitter centred at the origin in z = 0.
inline PolygonSet patch10mm() { return PolygonSet({rect(0, 0, 10e-3, 10e-3)}); }

inline constexpr double kLambda94GHz = 3.19e-3;

/// Axis-aligned box with outward faces.
inline Polyhedron box(const Point3& c, const Vec3& size) {
  const Vec3 h = 0.5 * size;
  std::vector<Polygon> faces;
  for (int axis = 0; axis < 3; ++axis) {
    const int a = (axis + 1) % 3;
    const int b = (axis + 2) % 3;
    for (double s : {-1.0, 1.0}) {
      std::vector<Point3> v;
      for (const auto& [da, db] : {std::pair{-1.0, -1.0}, {1.0, -1.0}, {1.0, 1.0}, {-1.0, 1.0}}) {
        Point3 p = c;
        p[axis] += s * h[axis];
        p[a] += da * h[a];
        p[b] += db * h[b];
        v.push_back(p);
      }
      faces.push_back(validate_polygon(v, s * Vec3::Unit(axis)).polygon);
    }
  }
  return Polyhedron(std::move(faces));
}

inline Polyhedron unit_cube() { return box(Point3::Zero(), Vec3::Ones()); }

/// Random star-shaped (hence simple) polygon with n vertices and diameter
/// at most `diameter`, placed in a random plane.
inline Polygon random_polygon(std::mt19937_64& rng, int n, double diameter, PlaneFrame* frame_out = nullptr) {
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  std::vector<double> ang;
  while (true) {
    ang.clear();
    for (int i = 0; i < n; ++i) ang.push_back(2.0 * 3.14159265358979323846 * uni(rng));
    std::sort(ang.begin(), ang.end());
    bool ok = true;
    for (int i = 0; i < n; ++i) {
      const double next = i + 1 < n ? ang[i + 1] : ang[0] + 2.0 * 3.14159265358979323846;
      if (next - ang[i] < 0.05 || next - ang[i] > 3.0) ok = false;
    }
    if (ok) break;
  }
  std::normal_distribution<double> g(0.0, 1.0);
  const Vec3 normal = Vec3(g(rng), g(rng), g(rng)).normalized();
  const PlaneFrame f = PlaneFrame::from_plane(normal, diameter * (uni(rng) - 0.5));
  std::vector<Vec2> ring;
  for (double a : ang) {
    const double r = 0.5 * diameter * (0.3 + 0.7 * uni(rng));
    ring.emplace_back(r * std::cos(a), r * std::sin(a));
  }
  if (frame_out) *frame_out = f;
  return Polygon::from_local(f, ring);
}

}  // namespace pw::fixtures
