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

#include <Eigen/Core>

#include <optional>
#include <span>
#include <vector>

namespace pw {

/// Orthonormal in-plane basis for a plane n.x = offset.
///
/// The basis is a deterministic function of (normal, offset), so two sets in
/// the same oriented plane share identical 2D coordinates.
struct PlaneFrame {
  Vec3 normal{Vec3::UnitZ()};
  double offset = 0.0;
  Point3 origin{Point3::Zero()};
  Vec3 u{Vec3::UnitX()};
  Vec3 v{Vec3::UnitY()};

  static PlaneFrame from_plane(const Vec3& normal, double offset);

  Vec2 to_local(const Point3& p) const {
    const Vec3 d = p - origin;
    return {d.dot(u), d.dot(v)};
  }
  Point3 to_world(const Vec2& q) const { return origin + q.x() * u + q.y() * v; }
  double height(const Point3& p) const { return normal.dot(p) - offset; }
};

/// Planar simple polygon with +1 winding about its normal.
class Polygon {
 public:
  const std::vector<Point3>& vertices() const { return vertices_; }
  std::size_t size() const { return vertices_.size(); }
  const Vec3& normal() const { return normal_; }
  double plane_offset() const { return offset_; }
  double area() const { return area_; }
  const Point3& centroid() const { return centroid_; }
  bool convex() const { return convex_; }
  PlaneFrame frame() const { return PlaneFrame::from_plane(normal_, offset_); }

  /// Edge i runs from vertex i to vertex i+1 (cyclic).
  Vec3 edge(std::size_t i) const { return vertices_[(i + 1) % size()] - vertices_[i]; }
  Point3 edge_midpoint(std::size_t i) const {
    return 0.5 * (vertices_[(i + 1) % size()] + vertices_[i]);
  }

  /// Coordinates in `frame`, which must share this polygon's plane.
  std::vector<Vec2> local(const PlaneFrame& frame) const;

  /// Builds a polygon from a counter-clockwise ring in `frame`. The ring is
  /// cleaned of repeated/collinear vertices; throws Degenerate if nothing is
  /// left.
  static Polygon from_local(const PlaneFrame& frame, const std::vector<Vec2>& ccw);

  Polygon reversed() const;

 private:
  friend struct PolygonAccess;
  Polygon() = default;

  std::vector<Point3> vertices_;
  Vec3 normal_{Vec3::UnitZ()};
  double offset_ = 0.0;
  double area_ = 0.0;
  Point3 centroid_{Point3::Zero()};
  bool convex_ = false;
};

struct ValidatedPolygon {
  Polygon polygon;
  bool flipped = false;  ///< input winding was reversed to reach +1
};

/// Fits the plane, checks planarity, simplicity and area, and orients the
/// vertex cycle counter-clockwise about the preferred normal. Without a
/// preference the normal whose largest-magnitude component is positive is
/// used.
ValidatedPolygon validate_polygon(std::span<const Point3> vertices,
                                  const std::optional<Vec3>& preferred_normal = std::nullopt);

class Segment1D {
 public:
  Segment1D(const Point3& a, const Point3& b);

  const Point3& start() const { return a_; }
  const Point3& end() const { return b_; }
  Vec3 lag() const { return b_ - a_; }
  Point3 midpoint() const { return 0.5 * (a_ + b_); }
  double length() const { return (b_ - a_).norm(); }
  Vec3 direction() const { return (b_ - a_).normalized(); }

 private:
  Point3 a_;
  Point3 b_;
};

class Polyhedron {
 public:
  /// Faces must carry outward normals. For convex solids this is verified
  /// against the vertex centroid; pass `assume_outward` for non-convex
  /// solids whose orientation the caller guarantees.
  explicit Polyhedron(std::vector<Polygon> faces, bool assume_outward = false);

  const std::vector<Polygon>& faces() const { return faces_; }
  double volume() const { return volume_; }
  const Point3& centroid() const { return centroid_; }

 private:
  std::vector<Polygon> faces_;
  double volume_ = 0.0;
  Point3 centroid_{Point3::Zero()};
};

/// Interior-disjoint coplanar polygons sharing one oriented plane frame.
class PolygonSet {
 public:
  /// Empty set in the given plane.
  explicit PolygonSet(const PlaneFrame& frame) : frame_(frame) {}

  /// Checks coplanarity and pairwise interior-disjointness. Parts whose
  /// normal is anti-parallel to the first part are re-oriented.
  explicit PolygonSet(std::vector<Polygon> parts);

  /// Skips validation; parts must already satisfy the class invariants.
  static PolygonSet trusted(const PlaneFrame& frame, std::vector<Polygon> parts);

  const PlaneFrame& frame() const { return frame_; }
  const std::vector<Polygon>& parts() const { return parts_; }
  bool empty() const { return parts_.empty(); }

  double area() const;
  /// Area centroid; the frame origin for an empty set.
  Point3 centroid() const;
  double diameter() const;
  bool contains(const Point3& p, double eps = tol::snap) const;

  /// Same region split into convex pieces.
  PolygonSet convex_pieces() const;

 private:
  PolygonSet() = default;

  PlaneFrame frame_;
  std::vector<Polygon> parts_;
};

/// Homogeneous transform p -> linear * p + translation.
struct AffineMap {
  Eigen::Matrix3d linear{Eigen::Matrix3d::Identity()};
  Vec3 translation{Vec3::Zero()};

  Point3 operator()(const Point3& p) const { return linear * p + translation; }
  AffineMap then(const AffineMap& next) const {
    return {next.linear * linear, next.linear * translation + next.translation};
  }
  AffineMap inverse() const;
};

/// Translation part of the lag-slice maps.
///
/// Consistent yields exactly {xi : x + xi/2 in G and x - xi/2 in G}, i.e.
/// translations -2x / +2x. PaperLiteral keeps the literal -x / +x matrices.
enum class SliceConvention { Consistent, PaperLiteral };

struct FrameComponents {
  Vec3 perp;   ///< (nu.n) n
  Vec3 par;    ///< nu - perp
  Vec3 cross;  ///< n x par
};

FrameComponents frame_components(const Wavevector& nu, const Vec3& n);

AffineMap make_m_plus(const Point3& x, SliceConvention c = SliceConvention::Consistent);
AffineMap make_m_minus(const Point3& x, SliceConvention c = SliceConvention::Consistent);
AffineMap make_translation(const Vec3& a);

/// Maps every vertex; the result's normal is the transformed plane normal and
/// windings are reversed when det(linear) < 0 so they stay +1.
Polygon apply_map(const AffineMap& map, const Polygon& p);
PolygonSet apply_map(const AffineMap& map, const PolygonSet& set);

/// Region covered by both sets, expressed in a's frame. Throws PlaneMismatch
/// unless the sets lie in the same plane (either orientation).
PolygonSet intersect(const PolygonSet& a, const PolygonSet& b);

/// Union as interior-disjoint convex pieces in a's frame.
PolygonSet unite(const PolygonSet& a, const PolygonSet& b);

std::vector<Polygon> convex_decompose(const Polygon& p);

/// Triangles covering p, for integration and sampling.
std::vector<Polygon> triangulate(const Polygon& p);

Polygon convex_hull(const PolygonSet& set);

/// {(a+b)/2 | a, b in set}, as interior-disjoint convex pieces.
PolygonSet minkowski_automean(const PolygonSet& set);

}  // namespace pw
