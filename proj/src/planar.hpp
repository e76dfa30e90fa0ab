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

// In-plane polygon kernel. All boolean work on coplanar regions happens here
// in a 2D orthonormal frame; callers lift results back into 3-space.

#pragma once

#include "polywigner/common.hpp"

#include <array>
#include <limits>
#include <vector>

namespace pw::planar {

/// A closed vertex ring, counter-clockwise unless stated otherwise.
using Ring = std::vector<Vec2>;

inline double cross(const Vec2& a, const Vec2& b) { return a.x() * b.y() - a.y() * b.x(); }

double signed_area(const Ring& r);
Vec2 centroid(const Ring& r);

/// Drops repeated and collinear vertices. Returns an empty ring when fewer
/// than three vertices survive or the enclosed area is below tol::area.
Ring cleanup(const Ring& r);

bool is_convex(const Ring& r);

/// Signed distance of p from the directed line a->b, positive on the left.
double side(const Vec2& a, const Vec2& b, const Vec2& p);

/// Keeps the part of a convex ring left of the directed line a->b.
Ring clip_halfplane(const Ring& subject, const Vec2& a, const Vec2& b);

/// Intersection of two convex CCW rings.
Ring clip_convex(const Ring& subject, const Ring& clip);

/// subject \ clip for convex CCW rings, as interior-disjoint convex rings.
std::vector<Ring> difference_convex(const Ring& subject, const Ring& clip);

Ring convex_hull(std::vector<Vec2> points);

/// Ear-clipping triangulation of a simple CCW ring.
std::vector<std::array<Vec2, 3>> triangulate(const Ring& r);

/// Hertel-Mehlhorn convex partition of a simple CCW ring.
std::vector<Ring> convex_partition(const Ring& r);

/// Boundary-inclusive point membership for a simple ring of either winding.
bool contains(const Ring& r, const Vec2& p, double eps = tol::snap);

bool segments_intersect(const Vec2& p1, const Vec2& p2, const Vec2& q1, const Vec2& q2,
                        double eps);

struct Box {
  Vec2 lo{Vec2::Constant(std::numeric_limits<double>::infinity())};
  Vec2 hi{Vec2::Constant(-std::numeric_limits<double>::infinity())};

  void extend(const Vec2& p) {
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  }
  bool overlaps(const Box& o, double eps) const {
    return lo.x() <= o.hi.x() + eps && o.lo.x() <= hi.x() + eps && lo.y() <= o.hi.y() + eps &&
           o.lo.y() <= hi.y() + eps;
  }
};

Box bounds(const Ring& r);

}  // namespace pw::planar
