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

#include "polywigner/phase_space.hpp"

#include "planar.hpp"
#include "polywigner/transforms.hpp"

#include <algorithm>
#include <cmath>

namespace pw {

namespace {

constexpr Complex kJ{0.0, 1.0};

double sinc_minus_one(double x) {
  const double y = kPi * x;
  if (std::abs(y) < 1e-2) {
    const double y2 = y * y;
    return y2 * (-1.0 / 6.0 + y2 * (1.0 / 120.0 + y2 * (-1.0 / 5040.0 + y2 / 362880.0)));
  }
  return std::sin(y) / y - 1.0;
}

// In-plane edge-sum transform of a CCW ring lying in a plane through the
// origin; same formula as sft_polygon expressed in plane coordinates.
Complex ring_transform(const Vec2& q, const planar::Ring& r, double sign) {
  const double area = planar::signed_area(r);
  const Vec2 c = planar::centroid(r);
  const double q2 = q.squaredNorm();
  const double phase = sign * kTwoPi * q.dot(c);
  const Complex shift{std::cos(phase), std::sin(phase)};
  if (std::sqrt(q2) <= tol::wavevector) return area * shift;
  Complex acc{0.0, 0.0};
  const std::size_t m = r.size();
  for (std::size_t i = 0; i < m; ++i) {
    const Vec2& p0 = r[i];
    const Vec2& p1 = r[(i + 1) % m];
    const Vec2 e = p1 - p0;
    const double a = planar::cross(q, e);
    const double arg = q.dot(e);
    const double phi = sign * kTwoPi * q.dot(0.5 * (p0 + p1) - c);
    const double s = std::sin(0.5 * phi);
    acc += a * (sinc(arg) * Complex{-2.0 * s * s, std::sin(phi)} + sinc_minus_one(arg));
  }
  return shift * acc / (sign * kTwoPi * kJ * q2);
}

PlaneFrame lag_frame(const PolygonSet& set) { return PlaneFrame::from_plane(set.frame().normal, 0.0); }

}  // namespace

double acf_point(const PolygonSet& set, const Point3& x, const Vec3& xi) {
  return set.contains(x + 0.5 * xi) && set.contains(x - 0.5 * xi) ? 1.0 : 0.0;
}

SliceResult lag_slice(const PolygonSet& set, const Point3& x, const PhaseSpaceOptions& opt) {
  PhaseSpacePoint src;
  src.position = x;
  const PlaneFrame& f = set.frame();
  const double h = f.height(x);
  if (set.empty() || std::abs(h) > tol::plane) return {PolygonSet(lag_frame(set)), src};
  const Point3 xp = x - h * f.normal;
  const PolygonSet plus = apply_map(make_m_plus(xp, opt.slice), set);
  const PolygonSet minus = apply_map(make_m_minus(xp, opt.slice), set);
  return {intersect(plus, minus), src};
}

Point3 position_center(const PolygonSet& set, const PhaseSpaceOptions& opt) {
  if (opt.center_override) return *opt.center_override;
  return set.centroid();
}

SliceResult position_slice(const PolygonSet& set, const Vec3& xi, const PhaseSpaceOptions& opt) {
  PhaseSpacePoint src;
  src.lag = xi;
  const PlaneFrame& f = set.frame();
  const Point3 center = position_center(set, opt);
  const double along = f.normal.dot(xi);
  if (set.empty() || std::abs(along) > tol::plane) {
    const double offset = opt.center_position_slices ? f.offset - f.normal.dot(center) : f.offset;
    return {PolygonSet(PlaneFrame::from_plane(f.normal, offset)), src};
  }
  const Vec3 lag = xi - along * f.normal;
  PolygonSet region =
      intersect(apply_map(make_translation(-0.5 * lag), set), apply_map(make_translation(0.5 * lag), set));
  if (opt.center_position_slices) region = apply_map(make_translation(-center), region);
  return {std::move(region), src};
}

Complex wigner(const PolygonSet& set, const Point3& x, const Wavevector& nu, const PhaseSpaceOptions& opt) {
  const auto slice = lag_slice(set, x, opt);
  if (slice.region.empty()) return {0.0, 0.0};
  return sft_polygon_set(nu, slice.region, opt.sign);
}

Complex wigner(const Segment1D& seg, const Point3& x, const Wavevector& nu, KernelSign sign) {
  const Vec3 d = seg.direction();
  const Vec3 rel = x - seg.start();
  const double s = rel.dot(d);
  if ((rel - s * d).norm() > tol::plane) return {0.0, 0.0};
  const double half = std::min(s, seg.length() - s);
  if (half <= tol::snap) return {0.0, 0.0};
  return sft_segment(nu, Segment1D(-2.0 * half * d, 2.0 * half * d), sign);
}

Complex ambiguity(const PolygonSet& set, const Wavevector& upsilon, const Vec3& xi,
                  const PhaseSpaceOptions& opt) {
  const auto slice = position_slice(set, xi, opt);
  if (slice.region.empty()) return {0.0, 0.0};
  return sft_polygon_set(upsilon, slice.region, opt.sign);
}

double marginal_r_x(const PolygonSet& set, const Point3& x, const PhaseSpaceOptions& opt) {
  return lag_slice(set, x, opt).region.area();
}

double marginal_r_xi(const PolygonSet& set, const Vec3& xi, const PhaseSpaceOptions& opt) {
  return position_slice(set, xi, opt).region.area();
}

PreparedAperture::PreparedAperture(const PolygonSet& set, KernelSign sign)
    : frame_(set.frame()), sign_(sign), area_(set.area()), centroid_(frame_.to_local(set.centroid())) {
  const PolygonSet convex = set.convex_pieces();
  for (const auto& piece : convex.parts()) {
    auto r = piece.local(frame_);
    if (planar::signed_area(r) < 0.0) std::reverse(r.begin(), r.end());
    pieces_.push_back(std::move(r));
  }
}

template <typename Fn>
void PreparedAperture::for_each_lag_piece(const Point3& x, Fn&& fn) const {
  if (std::abs(frame_.height(x)) > tol::plane) return;
  const Vec2 X = frame_.to_local(x);
  planar::Ring plus, minus;
  for (const auto& a : pieces_) {
    plus.clear();
    for (const auto& p : a) plus.push_back(2.0 * (p - X));
    const auto pb = planar::bounds(plus);
    for (const auto& b : pieces_) {
      minus.clear();
      for (const auto& p : b) minus.push_back(2.0 * (X - p));
      if (!pb.overlaps(planar::bounds(minus), tol::snap)) continue;
      const planar::Ring c = planar::clip_convex(plus, minus);
      if (!c.empty()) fn(c);
    }
  }
}

Complex PreparedAperture::wigner(const Point3& x, const Wavevector& nu) const {
  const Vec2 q{nu.vec().dot(frame_.u), nu.vec().dot(frame_.v)};
  const double s = sign_value(sign_);
  Complex acc{0.0, 0.0};
  for_each_lag_piece(x, [&](const planar::Ring& r) { acc += ring_transform(q, r, s); });
  return acc;
}

double PreparedAperture::lag_area(const Point3& x) const {
  double a = 0.0;
  for_each_lag_piece(x, [&](const planar::Ring& r) { a += planar::signed_area(r); });
  return a;
}

bool PreparedAperture::contains(const Point3& x) const {
  if (std::abs(frame_.height(x)) > tol::plane) return false;
  const Vec2 X = frame_.to_local(x);
  for (const auto& r : pieces_) {
    if (planar::contains(r, X)) return true;
  }
  return false;
}

Complex PreparedAperture::ambiguity(const Wavevector& upsilon, const Vec3& xi) const {
  if (std::abs(frame_.normal.dot(xi)) > tol::plane) return {0.0, 0.0};
  const Vec2 half = 0.5 * Vec2{xi.dot(frame_.u), xi.dot(frame_.v)};
  const Vec2 q{upsilon.vec().dot(frame_.u), upsilon.vec().dot(frame_.v)};
  const double s = sign_value(sign_);
  Complex acc{0.0, 0.0};
  planar::Ring lo, hi;
  for (const auto& a : pieces_) {
    lo.clear();
    for (const auto& p : a) lo.push_back(p - half - centroid_);
    const auto lb = planar::bounds(lo);
    for (const auto& b : pieces_) {
      hi.clear();
      for (const auto& p : b) hi.push_back(p + half - centroid_);
      if (!lb.overlaps(planar::bounds(hi), tol::snap)) continue;
      const planar::Ring c = planar::clip_convex(lo, hi);
      if (!c.empty()) acc += ring_transform(q, c, s);
    }
  }
  return acc;
}

}  // namespace pw
