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

#include "planar.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace pw::planar {

namespace {

double point_segment_distance(const Vec2& p, const Vec2& a, const Vec2& b) {
  const Vec2 ab = b - a;
  const double len2 = ab.squaredNorm();
  if (len2 == 0.0) return (p - a).norm();
  const double t = std::clamp((p - a).dot(ab) / len2, 0.0, 1.0);
  return (p - (a + t * ab)).norm();
}

bool in_triangle(const Vec2& p, const Vec2& a, const Vec2& b, const Vec2& c, double eps) {
  return side(a, b, p) >= -eps && side(b, c, p) >= -eps && side(c, a, p) >= -eps;
}

// Index-based ear clipping so the convex partition can recognise shared
// diagonals exactly.
std::vector<std::array<int, 3>> ear_clip_indices(const Ring& r) {
  std::vector<std::array<int, 3>> tris;
  std::vector<int> idx(r.size());
  std::iota(idx.begin(), idx.end(), 0);

  while (idx.size() > 3) {
    const std::size_t n = idx.size();
    std::size_t best = n;
    double best_turn = -std::numeric_limits<double>::infinity();
    bool clipped = false;
    for (std::size_t k = 0; k < n; ++k) {
      const Vec2& a = r[idx[(k + n - 1) % n]];
      const Vec2& b = r[idx[k]];
      const Vec2& c = r[idx[(k + 1) % n]];
      const double turn = cross(b - a, c - b);
      if (turn > best_turn) {
        best_turn = turn;
        best = k;
      }
      if (turn <= tol::snap * (b - a).norm()) continue;
      bool ear = true;
      for (std::size_t m = 0; m < n && ear; ++m) {
        if (m == k || m == (k + n - 1) % n || m == (k + 1) % n) continue;
        const Vec2& q = r[idx[m]];
        if ((q - a).norm() <= tol::snap || (q - b).norm() <= tol::snap ||
            (q - c).norm() <= tol::snap)
          continue;
        if (in_triangle(q, a, b, c, tol::snap)) ear = false;
      }
      if (ear) {
        tris.push_back({idx[(k + n - 1) % n], idx[k], idx[(k + 1) % n]});
        idx.erase(idx.begin() + static_cast<std::ptrdiff_t>(k));
        clipped = true;
        break;
      }
    }
    if (!clipped) {
      // Numerically stuck on a nearly degenerate ring: cut the most convex corner.
      tris.push_back({idx[(best + n - 1) % n], idx[best], idx[(best + 1) % n]});
      idx.erase(idx.begin() + static_cast<std::ptrdiff_t>(best));
    }
  }
  tris.push_back({idx[0], idx[1], idx[2]});
  return tris;
}

bool is_convex_indexed(const Ring& r, const std::vector<int>& idx) {
  const std::size_t n = idx.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2& a = r[idx[i]];
    const Vec2& b = r[idx[(i + 1) % n]];
    const Vec2& c = r[idx[(i + 2) % n]];
    if (cross(b - a, c - b) < -tol::snap * ((b - a).norm() + (c - b).norm())) return false;
  }
  return true;
}

}  // namespace

double signed_area(const Ring& r) {
  double s = 0.0;
  const std::size_t n = r.size();
  for (std::size_t i = 0; i < n; ++i) s += cross(r[i], r[(i + 1) % n]);
  return 0.5 * s;
}

Vec2 centroid(const Ring& r) {
  const std::size_t n = r.size();
  if (n == 0) return Vec2::Zero();
  // Shift to the first vertex for accuracy far from the origin.
  const Vec2 o = r[0];
  double a = 0.0;
  Vec2 c = Vec2::Zero();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 p = r[i] - o;
    const Vec2 q = r[(i + 1) % n] - o;
    const double w = cross(p, q);
    a += w;
    c += w * (p + q);
  }
  if (a == 0.0) {
    Vec2 m = Vec2::Zero();
    for (const auto& p : r) m += p;
    return m / static_cast<double>(n);
  }
  return o + c / (3.0 * a);
}

double side(const Vec2& a, const Vec2& b, const Vec2& p) {
  const Vec2 d = b - a;
  const double len = d.norm();
  if (len == 0.0) return (p - a).norm();
  return cross(d, p - a) / len;
}

Ring cleanup(const Ring& input) {
  Ring r;
  r.reserve(input.size());
  for (const auto& p : input) {
    if (r.empty() || (p - r.back()).norm() > tol::snap) r.push_back(p);
  }
  while (r.size() > 1 && (r.front() - r.back()).norm() <= tol::snap) r.pop_back();

  bool changed = true;
  while (changed && r.size() >= 3) {
    changed = false;
    for (std::size_t i = 0; i < r.size() && r.size() >= 3; ++i) {
      const std::size_t n = r.size();
      const Vec2& a = r[(i + n - 1) % n];
      const Vec2& b = r[i];
      const Vec2& c = r[(i + 1) % n];
      if ((c - a).norm() <= tol::snap || std::abs(side(a, c, b)) <= tol::snap) {
        r.erase(r.begin() + static_cast<std::ptrdiff_t>(i));
        changed = true;
        break;
      }
    }
  }
  if (r.size() < 3 || std::abs(signed_area(r)) < tol::area) return {};
  return r;
}

bool is_convex(const Ring& r) {
  std::vector<int> idx(r.size());
  std::iota(idx.begin(), idx.end(), 0);
  return r.size() >= 3 && is_convex_indexed(r, idx);
}

Ring clip_halfplane(const Ring& subject, const Vec2& a, const Vec2& b) {
  Ring out;
  const std::size_t n = subject.size();
  if (n == 0) return out;
  out.reserve(n + 1);
  std::vector<double> d(n);
  for (std::size_t i = 0; i < n; ++i) {
    d[i] = side(a, b, subject[i]);
    if (std::abs(d[i]) <= tol::snap) d[i] = 0.0;
  }
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = (i + 1) % n;
    if (d[i] >= 0.0) out.push_back(subject[i]);
    if ((d[i] > 0.0 && d[j] < 0.0) || (d[i] < 0.0 && d[j] > 0.0)) {
      const double t = d[i] / (d[i] - d[j]);
      out.push_back(subject[i] + t * (subject[j] - subject[i]));
    }
  }
  return out;
}

Ring clip_convex(const Ring& subject, const Ring& clip) {
  Ring cur = subject;
  const std::size_t n = clip.size();
  for (std::size_t i = 0; i < n && !cur.empty(); ++i) {
    cur = clip_halfplane(cur, clip[i], clip[(i + 1) % n]);
  }
  return cleanup(cur);
}

std::vector<Ring> difference_convex(const Ring& subject, const Ring& clip) {
  std::vector<Ring> pieces;
  if (!bounds(subject).overlaps(bounds(clip), tol::snap)) {
    pieces.push_back(subject);
    return pieces;
  }
  Ring rest = subject;
  const std::size_t n = clip.size();
  for (std::size_t i = 0; i < n && !rest.empty(); ++i) {
    const Vec2& a = clip[i];
    const Vec2& b = clip[(i + 1) % n];
    Ring outside = cleanup(clip_halfplane(rest, b, a));
    if (!outside.empty()) pieces.push_back(std::move(outside));
    rest = clip_halfplane(rest, a, b);
  }
  return pieces;
}

Ring convex_hull(std::vector<Vec2> pts) {
  std::sort(pts.begin(), pts.end(), [](const Vec2& a, const Vec2& b) {
    return a.x() < b.x() || (a.x() == b.x() && a.y() < b.y());
  });
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](const Vec2& a, const Vec2& b) { return (a - b).norm() <= tol::snap; }),
            pts.end());
  if (pts.size() < 3) return {};
  Ring h(2 * pts.size());
  std::size_t k = 0;
  auto turn = [](const Vec2& o, const Vec2& a, const Vec2& b) { return cross(a - o, b - o); };
  for (const auto& p : pts) {
    while (k >= 2 && turn(h[k - 2], h[k - 1], p) <= 0.0) --k;
    h[k++] = p;
  }
  const std::size_t lower = k + 1;
  for (auto it = pts.rbegin() + 1; it != pts.rend(); ++it) {
    while (k >= lower && turn(h[k - 2], h[k - 1], *it) <= 0.0) --k;
    h[k++] = *it;
  }
  h.resize(k - 1);
  return cleanup(h);
}

std::vector<std::array<Vec2, 3>> triangulate(const Ring& r) {
  std::vector<std::array<Vec2, 3>> out;
  if (r.size() < 3) return out;
  for (const auto& t : ear_clip_indices(r)) out.push_back({r[t[0]], r[t[1]], r[t[2]]});
  return out;
}

std::vector<Ring> convex_partition(const Ring& r) {
  if (r.size() < 3) return {};
  if (is_convex(r)) return {r};

  std::vector<std::vector<int>> pieces;
  for (const auto& t : ear_clip_indices(r)) pieces.push_back({t[0], t[1], t[2]});

  bool merged = true;
  while (merged) {
    merged = false;
    for (std::size_t pa = 0; pa < pieces.size() && !merged; ++pa) {
      for (std::size_t pb = pa + 1; pb < pieces.size() && !merged; ++pb) {
        const auto& A = pieces[pa];
        const auto& B = pieces[pb];
        for (std::size_t i = 0; i < A.size() && !merged; ++i) {
          const int u = A[i];
          const int v = A[(i + 1) % A.size()];
          for (std::size_t j = 0; j < B.size(); ++j) {
            if (B[j] != v || B[(j + 1) % B.size()] != u) continue;
            // A walked from v round to u, then B's interior vertices from u to v.
            std::vector<int> m;
            for (std::size_t k = 0; k < A.size(); ++k) m.push_back(A[(i + 1 + k) % A.size()]);
            for (std::size_t k = 2; k < B.size(); ++k) m.push_back(B[(j + k) % B.size()]);
            if (is_convex_indexed(r, m)) {
              pieces[pa] = std::move(m);
              pieces.erase(pieces.begin() + static_cast<std::ptrdiff_t>(pb));
              merged = true;
            }
            break;
          }
        }
      }
    }
  }

  std::vector<Ring> out;
  for (const auto& p : pieces) {
    Ring ring;
    for (int k : p) ring.push_back(r[k]);
    ring = cleanup(ring);
    if (!ring.empty()) out.push_back(std::move(ring));
  }
  return out;
}

bool contains(const Ring& r, const Vec2& p, double eps) {
  const std::size_t n = r.size();
  if (n < 3) return false;
  for (std::size_t i = 0; i < n; ++i) {
    if (point_segment_distance(p, r[i], r[(i + 1) % n]) <= eps) return true;
  }
  bool inside = false;
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const Vec2& a = r[i];
    const Vec2& b = r[j];
    if ((a.y() > p.y()) != (b.y() > p.y())) {
      const double x = (b.x() - a.x()) * (p.y() - a.y()) / (b.y() - a.y()) + a.x();
      if (p.x() < x) inside = !inside;
    }
  }
  return inside;
}

bool segments_intersect(const Vec2& p1, const Vec2& p2, const Vec2& q1, const Vec2& q2,
                        double eps) {
  if (point_segment_distance(p1, q1, q2) <= eps || point_segment_distance(p2, q1, q2) <= eps ||
      point_segment_distance(q1, p1, p2) <= eps || point_segment_distance(q2, p1, p2) <= eps)
    return true;
  const double d1 = side(q1, q2, p1);
  const double d2 = side(q1, q2, p2);
  const double d3 = side(p1, p2, q1);
  const double d4 = side(p1, p2, q2);
  return ((d1 > 0) != (d2 > 0)) && ((d3 > 0) != (d4 > 0));
}

Box bounds(const Ring& r) {
  Box b;
  for (const auto& p : r) b.extend(p);
  return b;
}

}  // namespace pw::planar
