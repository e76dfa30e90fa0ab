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

#include "polywigner/transforms.hpp"

#include <cmath>
#include <stdexcept>

namespace pw {

namespace {

constexpr Complex kJ{0.0, 1.0};

// sinc(x) - 1 without cancellation for small arguments.
double sinc_minus_one(double x) {
  const double y = kPi * x;
  if (std::abs(y) < 1e-2) {
    const double y2 = y * y;
    return y2 * (-1.0 / 6.0 + y2 * (1.0 / 120.0 + y2 * (-1.0 / 5040.0 + y2 / 362880.0)));
  }
  return std::sin(y) / y - 1.0;
}

// exp(j phi) - 1 without cancellation for small phases.
Complex expj_minus_one(double phi) {
  const double s = std::sin(0.5 * phi);
  return {-2.0 * s * s, std::sin(phi)};
}

Complex expj(double phi) { return {std::cos(phi), std::sin(phi)}; }

// Transform of `p` translated by -origin.
Complex polygon_about(const Wavevector& nu, const Polygon& p, const Point3& origin, KernelSign sign) {
  const double s = sign_value(sign);
  const Vec3& n = p.normal();
  const auto fc = frame_components(nu, n);
  const double q2 = fc.par.squaredNorm();
  const Point3& c = p.centroid();
  const Complex shift = expj(s * kTwoPi * nu.vec().dot(c - origin));
  if (std::sqrt(q2) <= tol::wavevector) return p.area() * shift;

  // Edge terms relative to the centroid. The plain sum of a_i vanishes for a
  // closed cycle, so it is subtracted exactly to keep small-|q| accuracy.
  Complex acc{0.0, 0.0};
  const std::size_t m = p.size();
  for (std::size_t i = 0; i < m; ++i) {
    const Vec3 e = p.edge(i);
    const double a = fc.cross.dot(e);
    const double arg = fc.par.dot(e);
    const double phi = s * kTwoPi * fc.par.dot(p.edge_midpoint(i) - c);
    acc += a * (sinc(arg) * expj_minus_one(phi) + sinc_minus_one(arg));
  }
  return shift * acc / (s * kTwoPi * kJ * q2);
}

}  // namespace

double sinc(double x) {
  const double y = kPi * x;
  if (std::abs(y) < 1e-4) {
    const double y2 = y * y;
    return 1.0 - y2 / 6.0 + y2 * y2 / 120.0;
  }
  return std::sin(y) / y;
}

Complex sft_segment(const Wavevector& nu, const Segment1D& seg, KernelSign sign) {
  const double s = sign_value(sign);
  return seg.length() * sinc(nu.vec().dot(seg.lag())) *
         expj(s * kTwoPi * nu.vec().dot(seg.midpoint()));
}

Complex sft_polygon(const Wavevector& nu, const Polygon& polygon, KernelSign sign) {
  return polygon_about(nu, polygon, Point3::Zero(), sign);
}

Complex sft_polygon_set(const Wavevector& nu, const PolygonSet& set, KernelSign sign) {
  Complex acc{0.0, 0.0};
  for (const auto& p : set.parts()) acc += sft_polygon(nu, p, sign);
  return acc;
}

Complex sft_polyhedron(const Wavevector& nu, const Polyhedron& solid, KernelSign sign) {
  const double s = sign_value(sign);
  const Point3& c = solid.centroid();
  const Complex shift = expj(s * kTwoPi * nu.vec().dot(c));
  const double k2 = nu.vec().squaredNorm();
  if (std::sqrt(k2) <= tol::wavevector) return solid.volume() * shift;
  Complex acc{0.0, 0.0};
  for (const auto& f : solid.faces()) {
    acc += nu.vec().dot(f.normal()) * polygon_about(nu, f, c, sign);
  }
  return shift * acc / (s * kTwoPi * kJ * k2);
}

Complex sft_collection(const Wavevector& nu, std::span<const Radiator> parts, CombineMode mode,
                       KernelSign sign) {
  if (parts.empty()) return {0.0, 0.0};
  const std::size_t kind = parts.front().index();
  for (const auto& p : parts) {
    if (p.index() != kind) throw std::invalid_argument("collection mixes figure dimensions");
  }
  const double k = nu.norm();
  if (mode == CombineMode::Directional) {
    if (k <= tol::wavevector) throw ZeroFrequency("directional collection weights need |nu| > 0");
    if (std::holds_alternative<Polyhedron>(parts.front())) {
      throw std::invalid_argument("directional weights are undefined for polyhedra");
    }
  }

  Complex acc{0.0, 0.0};
  for (const auto& part : parts) {
    if (const auto* seg = std::get_if<Segment1D>(&part)) {
      const Complex f = sft_segment(nu, *seg, sign);
      acc += mode == CombineMode::Sum ? f : (1.0 - nu.vec().dot(seg->direction()) / k) * f;
    } else if (const auto* poly = std::get_if<Polygon>(&part)) {
      const Complex f = sft_polygon(nu, *poly, sign);
      acc += mode == CombineMode::Sum ? f : (nu.vec().dot(poly->normal()) / k) * f;
    } else {
      acc += sft_polyhedron(nu, std::get<Polyhedron>(part), sign);
    }
  }
  return acc;
}

}  // namespace pw
