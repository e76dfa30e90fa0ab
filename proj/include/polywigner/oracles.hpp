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
#include "polywigner/geometry.hpp"
#include "polywigner/grid_field.hpp"

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace pw {

/// Mesh density for the quadrature oracles.
///
/// Each triangle of the region is split into k^2 similar sub-triangles with
/// edges no longer than h = wavelength / samples_per_wavelength, where the
/// wavelength is the one set by the probed frequency (or the region
/// diameter, whichever is shorter in frequency). `order` 1 uses the
/// sub-triangle centroid (midpoint rule, error O(h^2)); order n >= 2 uses a
/// collapsed n x n Gauss-Legendre rule on every sub-triangle.
struct QuadratureSpec {
  int samples_per_wavelength = 8;
  std::size_t max_points = 4'000'000;
  int order = 1;
  /// Explicit sub-triangle edge length; overrides the wavelength rule.
  std::optional<double> step;

  void validate() const;
};

/// Nodes and weights of the n-point Gauss-Legendre rule on [0, 1].
std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int n);

/// Numerical integral of exp(sign*2*pi*j nu.x) over the set.
Complex ft_quadrature(const PolygonSet& set, const Wavevector& nu, const QuadratureSpec& q = {},
                      KernelSign sign = KernelSign::Negative);

/// Pixel lattice laid in a set's plane frame.
struct Raster {
  PlaneFrame frame;
  Vec2 lo{Vec2::Zero()};
  double pixel = 1.0;
  std::uint32_t nx = 1;
  std::uint32_t ny = 1;

  /// Square pixels covering [lo, hi] with `n` pixels along the longer side
  /// and one pixel of margin.
  static Raster covering(const PlaneFrame& frame, const Vec2& lo, const Vec2& hi, std::uint32_t n);
  GridGeometry geometry() const;  ///< node = pixel centre
};

/// Raster that fits the convex hull of the set's automean.
Raster automean_raster(const PolygonSet& set, std::uint32_t n);

/// Midpoint histogram of `n_pairs` independent uniform point pairs drawn
/// from the set, as counts per pixel. Requires n_pairs >= 10^4.
GridField automean_brute(const PolygonSet& set, std::size_t n_pairs, const Raster& raster,
                         std::uint64_t seed = 1);

/// Exact covered-area fraction of every pixel.
GridField coverage(const PolygonSet& set, const Raster& raster);

/// Intersection over union of two masks given as per-pixel values; a pixel
/// belongs to a mask when its value exceeds the threshold.
double iou(const GridField& a, double threshold_a, const GridField& b, double threshold_b);

/// Rayleigh-Sommerfeld (first kind) field of the unit-amplitude aperture:
///   U(x') = 1/(j lambda) * integral exp(2 pi j r / lambda) / r * cos(theta) dA.
/// The mesh is refined near the aperture so that h <= |z| / spw as well.
Complex kirchhoff_field(const PolygonSet& aperture, const Point3& x, double wavelength,
                        const QuadratureSpec& q = {});

/// Closed-form transform of an a x b rectangle centred at the origin in the
/// xy plane.
Complex fraunhofer_rect(double a, double b, const Wavevector& nu);

}  // namespace pw
