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

#include <optional>
#include <vector>

namespace pw {

struct PhaseSpaceOptions {
  SliceConvention slice = SliceConvention::Consistent;
  KernelSign sign = KernelSign::Negative;
  /// Translate position slices by -xbar before transforming.
  bool center_position_slices = true;
  /// Replaces the area centroid as xbar.
  std::optional<Point3> center_override;
};

/// A point in one of the phase spaces; only the coordinates relevant to the
/// producing function are set.
struct PhaseSpacePoint {
  std::optional<Point3> position;
  std::optional<Vec3> lag;
  std::optional<Wavevector> wavevector;
  std::optional<Wavevector> shift;
};

struct SliceResult {
  PolygonSet region;
  PhaseSpacePoint source;
};

/// Autocorrelation of the unit-amplitude field: 1 when both x + xi/2 and
/// x - xi/2 lie in the set (boundary inclusive), else 0.
double acf_point(const PolygonSet& set, const Point3& x, const Vec3& xi);

/// {xi : x +/- xi/2 in set}, a region in the lag plane through the origin.
/// Empty when x is off the aperture plane.
SliceResult lag_slice(const PolygonSet& set, const Point3& x, const PhaseSpaceOptions& opt = {});

/// {x : x +/- xi/2 in set}, shifted by -xbar unless centering is disabled.
/// Empty when xi has a component normal to the aperture plane.
SliceResult position_slice(const PolygonSet& set, const Vec3& xi, const PhaseSpaceOptions& opt = {});

/// xbar used to centre position slices.
Point3 position_center(const PolygonSet& set, const PhaseSpaceOptions& opt = {});

/// W(x, nu): transform of the lag slice at x. Units [Sigma/R^2].
Complex wigner(const PolygonSet& set, const Point3& x, const Wavevector& nu,
               const PhaseSpaceOptions& opt = {});

/// Wigner function of a single uniformly illuminated segment.
Complex wigner(const Segment1D& seg, const Point3& x, const Wavevector& nu,
               KernelSign sign = KernelSign::Negative);

/// A(upsilon, xi): transform of the position slice at xi.
Complex ambiguity(const PolygonSet& set, const Wavevector& upsilon, const Vec3& xi,
                  const PhaseSpaceOptions& opt = {});

/// Integral of the autocorrelation over lag at x (area of the lag slice).
double marginal_r_x(const PolygonSet& set, const Point3& x, const PhaseSpaceOptions& opt = {});

/// Integral of the autocorrelation over position at xi (overlap area).
double marginal_r_xi(const PolygonSet& set, const Vec3& xi, const PhaseSpaceOptions& opt = {});

/// Planar aperture prepared for repeated Wigner evaluation.
///
/// Holds the convex pieces in 2D plane coordinates and evaluates lag slices
/// and their transforms without building intermediate 3D polygons. Uses the
/// consistent slice convention.
class PreparedAperture {
 public:
  explicit PreparedAperture(const PolygonSet& set, KernelSign sign = KernelSign::Negative);

  const PlaneFrame& frame() const { return frame_; }
  double area() const { return area_; }

  Complex wigner(const Point3& x, const Wavevector& nu) const;
  /// Area of the lag slice at x.
  double lag_area(const Point3& x) const;
  bool contains(const Point3& x) const;
  /// A(upsilon, xi) with position slices centred on the area centroid.
  Complex ambiguity(const Wavevector& upsilon, const Vec3& xi) const;

 private:
  template <typename Fn>
  void for_each_lag_piece(const Point3& x, Fn&& fn) const;

  PlaneFrame frame_;
  KernelSign sign_;
  std::vector<std::vector<Vec2>> pieces_;
  double area_ = 0.0;
  Vec2 centroid_{Vec2::Zero()};
};

}  // namespace pw
