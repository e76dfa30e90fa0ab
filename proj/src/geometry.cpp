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

#include "polywigner/geometry.hpp"

#include "planar.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pw {

using planar::Ring;

struct PolygonAccess {
  static Polygon make(std::vector<Point3> vertices, const Vec3& normal, double offset,
                      double area, const Point3& centroid, bool convex) {
    Polygon p;
    p.vertices_ = std::move(vertices);
    p.normal_ = normal;
    p.offset_ = offset;
    p.area_ = area;
    p.centroid_ = centroid;
    p.convex_ = convex;
    return p;
  }
};

namespace {

// Ring of `p` in `frame`, counter-clockwise with respect to frame.normal.
Ring ccw_ring(const Polygon& p, const PlaneFrame& frame) {
  Ring r = p.local(frame);
  if (p.normal().dot(frame.normal) < 0.0) std::reverse(r.begin(), r.end());
  return r;
}

std::vector<Ring> convex_rings(const PolygonSet& set, const PlaneFrame& frame) {
  std::vector<Ring> out;
  for (const auto& part : set.parts()) {
    Ring r = ccw_ring(part, frame);
    if (part.convex()) {
      out.push_back(std::move(r));
    } else {
      for (auto& piece : planar::convex_partition(planar::cleanup(r))) out.push_back(std::move(piece));
    }
  }
  return out;
}

// Adds a convex ring to a collection of interior-disjoint convex rings,
// keeping only the portion not already covered.
void add_disjoint(std::vector<Ring>& acc, std::vector<planar::Box>& boxes, const Ring& piece) {
  std::vector<Ring> remainder{piece};
  const std::size_t existing = acc.size();
  for (std::size_t k = 0; k < existing && !remainder.empty(); ++k) {
    std::vector<Ring> next;
    for (auto& r : remainder) {
      if (!planar::bounds(r).overlaps(boxes[k], tol::snap)) {
        next.push_back(std::move(r));
        continue;
      }
      for (auto& d : planar::difference_convex(r, acc[k])) next.push_back(std::move(d));
    }
    remainder = std::move(next);
  }
  for (auto& r : remainder) {
    boxes.push_back(planar::bounds(r));
    acc.push_back(std::move(r));
  }
}

PolygonSet rings_to_set(const PlaneFrame& frame, const std::vector<Ring>& rings) {
  std::vector<Polygon> parts;
  parts.reserve(rings.size());
  for (const auto& r : rings) {
    Ring c = planar::cleanup(r);
    if (!c.empty()) parts.push_back(Polygon::from_local(frame, c));
  }
  return PolygonSet::trusted(frame, std::move(parts));
}

void check_same_plane(const PlaneFrame& a, const PlaneFrame& b) {
  const double dot = a.normal.dot(b.normal);
  if (std::abs(dot) < 1.0 - 1e-9) {
    throw GeometryError(GeometryError::Kind::PlaneMismatch, "sets lie in non-parallel planes");
  }
  const double ob = dot > 0.0 ? b.offset : -b.offset;
  const double scale = std::max({1.0, std::abs(a.offset), std::abs(b.offset)});
  if (std::abs(ob - a.offset) > tol::plane * scale) {
    throw GeometryError(GeometryError::Kind::PlaneMismatch, "sets lie in distinct parallel planes");
  }
}

}  // namespace

PlaneFrame PlaneFrame::from_plane(const Vec3& normal, double offset) {
  PlaneFrame f;
  f.normal = normal.normalized();
  f.offset = offset;
  f.origin = offset * f.normal;
  int axis = 0;
  for (int i = 1; i < 3; ++i) {
    if (std::abs(f.normal[i]) < std::abs(f.normal[axis])) axis = i;
  }
  const Vec3 seed = Vec3::Unit(axis);
  f.u = (seed - seed.dot(f.normal) * f.normal).normalized();
  f.v = f.normal.cross(f.u);
  return f;
}

std::vector<Vec2> Polygon::local(const PlaneFrame& frame) const {
  std::vector<Vec2> r;
  r.reserve(vertices_.size());
  for (const auto& p : vertices_) r.push_back(frame.to_local(p));
  return r;
}

Polygon Polygon::from_local(const PlaneFrame& frame, const std::vector<Vec2>& ccw) {
  Ring r = planar::cleanup(ccw);
  if (r.empty()) throw GeometryError(GeometryError::Kind::Degenerate, "polygon has no area");
  double a = planar::signed_area(r);
  if (a < 0.0) {
    std::reverse(r.begin(), r.end());
    a = -a;
  }
  std::vector<Point3> verts;
  verts.reserve(r.size());
  for (const auto& q : r) verts.push_back(frame.to_world(q));
  return PolygonAccess::make(std::move(verts), frame.normal, frame.offset, a,
                             frame.to_world(planar::centroid(r)), planar::is_convex(r));
}

Polygon Polygon::reversed() const {
  std::vector<Point3> verts(vertices_.rbegin(), vertices_.rend());
  return PolygonAccess::make(std::move(verts), -normal_, -offset_, area_, centroid_, convex_);
}

ValidatedPolygon validate_polygon(std::span<const Point3> vertices,
                                  const std::optional<Vec3>& preferred_normal) {
  using Kind = GeometryError::Kind;
  const std::size_t n = vertices.size();
  if (n < 3) throw GeometryError(Kind::Degenerate, "polygon needs at least 3 vertices");
  for (const auto& p : vertices) {
    if (!p.allFinite()) throw GeometryError(Kind::Degenerate, "non-finite vertex");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if ((vertices[(i + 1) % n] - vertices[i]).norm() <= tol::snap) {
      throw GeometryError(Kind::Degenerate, "consecutive vertices coincide");
    }
  }

  Point3 mean = Point3::Zero();
  for (const auto& p : vertices) mean += p;
  mean /= static_cast<double>(n);
  Eigen::Matrix3d cov = Eigen::Matrix3d::Zero();
  Vec3 newell = Vec3::Zero();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec3 d = vertices[i] - mean;
    cov += d * d.transpose();
    newell += (vertices[i] - mean).cross(vertices[(i + 1) % n] - mean);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> eig(cov);
  if (std::sqrt(std::max(0.0, eig.eigenvalues()(1))) <= tol::plane) {
    throw GeometryError(Kind::Degenerate, "vertices are collinear");
  }
  Vec3 normal = eig.eigenvectors().col(0).normalized();
  if (newell.dot(normal) < 0.0) normal = -normal;

  for (const auto& p : vertices) {
    if (std::abs(normal.dot(p - mean)) > tol::plane) {
      throw GeometryError(Kind::NonPlanar, "vertices deviate from the fitted plane");
    }
  }

  const PlaneFrame frame = PlaneFrame::from_plane(normal, normal.dot(mean));
  Ring ring;
  ring.reserve(n);
  for (const auto& p : vertices) ring.push_back(frame.to_local(p));

  for (std::size_t i = 0; i < n; ++i) {
    const Vec2& a = ring[(i + n - 1) % n];
    const Vec2& b = ring[i];
    const Vec2& c = ring[(i + 1) % n];
    const Vec2 e0 = b - a;
    const Vec2 e1 = c - b;
    if (std::abs(planar::cross(e0, e1)) <= tol::snap * e0.norm() && e0.dot(e1) < 0.0) {
      throw GeometryError(Kind::SelfIntersecting, "edge folds back on its predecessor");
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 2; j < n; ++j) {
      if (i == 0 && j == n - 1) continue;
      if (planar::segments_intersect(ring[i], ring[(i + 1) % n], ring[j], ring[(j + 1) % n],
                                     tol::snap)) {
        throw GeometryError(Kind::SelfIntersecting, "polygon edges intersect");
      }
    }
  }

  const double signed_a = planar::signed_area(ring);
  if (std::abs(signed_a) < tol::area) throw GeometryError(Kind::Degenerate, "polygon area below tolerance");

  const Vec3 natural = signed_a > 0.0 ? normal : Vec3(-normal);
  Vec3 target = natural;
  if (preferred_normal) {
    if (natural.dot(*preferred_normal) < 0.0) target = -natural;
  } else {
    int axis = 0;
    for (int i = 1; i < 3; ++i) {
      if (std::abs(natural[i]) > std::abs(natural[axis]) + 1e-12) axis = i;
    }
    if (natural[axis] < 0.0) target = -natural;
  }
  const bool flipped = target.dot(natural) < 0.0;

  std::vector<Point3> verts(vertices.begin(), vertices.end());
  if (flipped) std::reverse(verts.begin(), verts.end());
  Ring oriented = ring;
  if (signed_a < 0.0) std::reverse(oriented.begin(), oriented.end());
  const Point3 centroid = frame.to_world(planar::centroid(ring));

  return {PolygonAccess::make(std::move(verts), target, target.dot(mean), std::abs(signed_a),
                              centroid, planar::is_convex(oriented)),
          flipped};
}

Segment1D::Segment1D(const Point3& a, const Point3& b) : a_(a), b_(b) {
  if (!a.allFinite() || !b.allFinite() || (b - a).norm() <= tol::snap) {
    throw GeometryError(GeometryError::Kind::Degenerate, "segment endpoints must be distinct");
  }
}

Polyhedron::Polyhedron(std::vector<Polygon> faces, bool assume_outward) : faces_(std::move(faces)) {
  if (faces_.size() < 4) throw GeometryError(GeometryError::Kind::Degenerate, "polyhedron needs at least 4 faces");
  double vol = 0.0;
  Vec3 moment = Vec3::Zero();
  Point3 vmean = Point3::Zero();
  std::size_t count = 0;
  for (const auto& f : faces_) {
    for (const auto& v : f.vertices()) {
      vmean += v;
      ++count;
    }
    for (const auto& t : triangulate(f)) {
      const auto& q = t.vertices();
      const double v6 = q[0].dot(q[1].cross(q[2])) / 6.0;
      vol += v6;
      moment += v6 * (q[0] + q[1] + q[2]) / 4.0;
    }
  }
  vmean /= static_cast<double>(count);
  if (!(vol > 0.0)) throw GeometryError(GeometryError::Kind::NotOutward, "polyhedron has non-positive volume");
  if (!assume_outward) {
    for (const auto& f : faces_) {
      if ((f.centroid() - vmean).dot(f.normal()) <= 0.0) {
        throw GeometryError(GeometryError::Kind::NotOutward, "face normal points inward");
      }
    }
  }
  volume_ = vol;
  centroid_ = moment / vol;
}

PolygonSet::PolygonSet(std::vector<Polygon> parts) {
  if (parts.empty()) throw std::invalid_argument("PolygonSet needs at least one part; use PolygonSet(frame) for an empty set");
  frame_ = parts.front().frame();
  for (auto& p : parts) {
    check_same_plane(frame_, p.frame());
    if (p.normal().dot(frame_.normal) < 0.0) p = p.reversed();
  }
  parts_ = std::move(parts);
  const auto rings = convex_rings(*this, frame_);
  // Pieces of one part never overlap, so cross-part overlaps are the only
  // concern; checking all pairs is cheap at input sizes.
  double total = 0.0;
  for (const auto& r : rings) total += planar::signed_area(r);
  for (std::size_t i = 0; i < rings.size(); ++i) {
    for (std::size_t j = i + 1; j < rings.size(); ++j) {
      const Ring c = planar::clip_convex(rings[i], rings[j]);
      if (!c.empty() && planar::signed_area(c) > std::max(tol::area, 1e-12 * total)) {
        throw GeometryError(GeometryError::Kind::SelfIntersecting, "set parts overlap");
      }
    }
  }
}

PolygonSet PolygonSet::trusted(const PlaneFrame& frame, std::vector<Polygon> parts) {
  PolygonSet s;
  s.frame_ = frame;
  s.parts_ = std::move(parts);
  return s;
}

double PolygonSet::area() const {
  double a = 0.0;
  for (const auto& p : parts_) a += p.area();
  return a;
}

Point3 PolygonSet::centroid() const {
  double a = 0.0;
  Vec3 m = Vec3::Zero();
  for (const auto& p : parts_) {
    a += p.area();
    m += p.area() * p.centroid();
  }
  return a > 0.0 ? Point3(m / a) : frame_.origin;
}

double PolygonSet::diameter() const {
  double d = 0.0;
  std::vector<Point3> pts;
  for (const auto& p : parts_) pts.insert(pts.end(), p.vertices().begin(), p.vertices().end());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) d = std::max(d, (pts[i] - pts[j]).norm());
  }
  return d;
}

bool PolygonSet::contains(const Point3& p, double eps) const {
  if (std::abs(frame_.height(p)) > std::max(eps, tol::plane)) return false;
  const Vec2 q = frame_.to_local(p);
  for (const auto& part : parts_) {
    if (planar::contains(part.local(frame_), q, eps)) return true;
  }
  return false;
}

PolygonSet PolygonSet::convex_pieces() const {
  std::vector<Polygon> out;
  for (const auto& p : parts_) {
    if (p.convex()) {
      out.push_back(p);
    } else {
      for (auto& c : convex_decompose(p)) out.push_back(std::move(c));
    }
  }
  return trusted(frame_, std::move(out));
}

AffineMap AffineMap::inverse() const {
  const Eigen::Matrix3d inv = linear.inverse();
  return {inv, -inv * translation};
}

FrameComponents frame_components(const Wavevector& nu, const Vec3& n) {
  const Vec3 perp = nu.vec().dot(n) * n;
  const Vec3 par = nu.vec() - perp;
  return {perp, par, n.cross(par)};
}

AffineMap make_m_plus(const Point3& x, SliceConvention c) {
  const double k = c == SliceConvention::Consistent ? 2.0 : 1.0;
  return {2.0 * Eigen::Matrix3d::Identity(), -k * x};
}

AffineMap make_m_minus(const Point3& x, SliceConvention c) {
  const double k = c == SliceConvention::Consistent ? 2.0 : 1.0;
  return {-2.0 * Eigen::Matrix3d::Identity(), k * x};
}

AffineMap make_translation(const Vec3& a) { return {Eigen::Matrix3d::Identity(), a}; }

namespace {

PlaneFrame map_frame(const AffineMap& map, const PlaneFrame& f) {
  const double det = map.linear.determinant();
  if (!(std::abs(det) > 0.0)) throw std::invalid_argument("affine map is singular");
  const Vec3 n = (map.linear.inverse().transpose() * f.normal).normalized();
  return PlaneFrame::from_plane(n, n.dot(map(f.origin)));
}

Polygon map_into(const AffineMap& map, const Polygon& p, const PlaneFrame& target) {
  Ring r;
  r.reserve(p.size());
  for (const auto& v : p.vertices()) r.push_back(target.to_local(map(v)));
  return Polygon::from_local(target, r);
}

}  // namespace

Polygon apply_map(const AffineMap& map, const Polygon& p) {
  return map_into(map, p, map_frame(map, p.frame()));
}

PolygonSet apply_map(const AffineMap& map, const PolygonSet& set) {
  const PlaneFrame target = map_frame(map, set.frame());
  std::vector<Polygon> parts;
  parts.reserve(set.parts().size());
  for (const auto& p : set.parts()) parts.push_back(map_into(map, p, target));
  return PolygonSet::trusted(target, std::move(parts));
}

PolygonSet intersect(const PolygonSet& a, const PolygonSet& b) {
  check_same_plane(a.frame(), b.frame());
  const auto ra = convex_rings(a, a.frame());
  const auto rb = convex_rings(b, a.frame());
  std::vector<planar::Box> bb;
  bb.reserve(rb.size());
  for (const auto& r : rb) bb.push_back(planar::bounds(r));
  std::vector<Polygon> parts;
  for (const auto& p : ra) {
    const auto box = planar::bounds(p);
    for (std::size_t j = 0; j < rb.size(); ++j) {
      if (!box.overlaps(bb[j], tol::snap)) continue;
      Ring c = planar::clip_convex(p, rb[j]);
      if (!c.empty()) parts.push_back(Polygon::from_local(a.frame(), c));
    }
  }
  return PolygonSet::trusted(a.frame(), std::move(parts));
}

PolygonSet unite(const PolygonSet& a, const PolygonSet& b) {
  check_same_plane(a.frame(), b.frame());
  std::vector<Ring> acc = convex_rings(a, a.frame());
  std::vector<planar::Box> boxes;
  for (const auto& r : acc) boxes.push_back(planar::bounds(r));
  for (const auto& r : convex_rings(b, a.frame())) add_disjoint(acc, boxes, r);
  return rings_to_set(a.frame(), acc);
}

std::vector<Polygon> convex_decompose(const Polygon& p) {
  if (p.convex()) return {p};
  const PlaneFrame f = p.frame();
  std::vector<Polygon> out;
  for (const auto& r : planar::convex_partition(planar::cleanup(p.local(f)))) {
    out.push_back(Polygon::from_local(f, r));
  }
  return out;
}

std::vector<Polygon> triangulate(const Polygon& p) {
  const PlaneFrame f = p.frame();
  std::vector<Polygon> out;
  const Ring r = planar::cleanup(p.local(f));
  for (const auto& t : planar::triangulate(r)) {
    Ring tri{t[0], t[1], t[2]};
    if (!planar::cleanup(tri).empty()) out.push_back(Polygon::from_local(f, tri));
  }
  return out;
}

Polygon convex_hull(const PolygonSet& set) {
  std::vector<Vec2> pts;
  for (const auto& p : set.parts()) {
    for (const auto& v : p.vertices()) pts.push_back(set.frame().to_local(v));
  }
  Ring h = planar::convex_hull(std::move(pts));
  if (h.empty()) throw GeometryError(GeometryError::Kind::Degenerate, "convex hull of an empty set");
  return Polygon::from_local(set.frame(), h);
}

PolygonSet minkowski_automean(const PolygonSet& set) {
  const PlaneFrame& f = set.frame();
  const auto pieces = convex_rings(set, f);
  std::vector<Ring> acc;
  std::vector<planar::Box> boxes;
  for (const auto& r : pieces) add_disjoint(acc, boxes, r);
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    for (std::size_t j = i + 1; j < pieces.size(); ++j) {
      std::vector<Vec2> mids;
      mids.reserve(pieces[i].size() * pieces[j].size());
      for (const auto& p : pieces[i]) {
        for (const auto& q : pieces[j]) mids.push_back(0.5 * (p + q));
      }
      Ring h = planar::convex_hull(std::move(mids));
      if (!h.empty()) add_disjoint(acc, boxes, h);
    }
  }
  return rings_to_set(f, acc);
}

}  // namespace pw
