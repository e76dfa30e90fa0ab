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

#include "polywigner/oracles.hpp"

#include "planar.hpp"
#include "polywigner/transforms.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <array>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

namespace pw {

void QuadratureSpec::validate() const {
  if (samples_per_wavelength < 4) throw std::invalid_argument("samples_per_wavelength must be >= 4");
  if (order < 1 || order > 64) throw std::invalid_argument("quadrature order must be in [1, 64]");
  if (max_points == 0) throw std::invalid_argument("max_points must be positive");
  if (step && !(*step > 0.0)) throw std::invalid_argument("quadrature step must be positive");
}

std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("Gauss-Legendre rule needs n >= 1");
  // Golub-Welsch: eigen-decomposition of the Jacobi matrix of the Legendre
  // recurrence.
  Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(n, n);
  for (int k = 1; k < n; ++k) {
    const double b = k / std::sqrt(4.0 * k * k - 1.0);
    jac(k, k - 1) = b;
    jac(k - 1, k) = b;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jac);
  std::vector<double> x(n), w(n);
  for (int i = 0; i < n; ++i) {
    x[i] = 0.5 * (es.eigenvalues()(i) + 1.0);
    const double v0 = es.eigenvectors()(0, i);
    w[i] = v0 * v0;  // 2 v0^2 on [-1, 1], halved for [0, 1]
  }
  return {x, w};
}

namespace {

using Tri = std::array<Point3, 3>;

std::vector<Tri> mesh_triangles(const PolygonSet& set) {
  std::vector<Tri> out;
  const PlaneFrame& f = set.frame();
  for (const auto& part : set.parts()) {
    auto r = part.local(f);
    if (planar::signed_area(r) < 0.0) std::reverse(r.begin(), r.end());
    for (const auto& t : planar::triangulate(r))
      out.push_back({f.to_world(t[0]), f.to_world(t[1]), f.to_world(t[2])});
  }
  return out;
}

double max_edge(const Tri& t) {
  return std::max({(t[1] - t[0]).norm(), (t[2] - t[1]).norm(), (t[0] - t[2]).norm()});
}

/// Reference points (barycentric b, c) and weights of the per-triangle rule,
/// weights summing to 1.
struct TriangleRule {
  std::vector<Vec2> nodes;
  std::vector<double> weights;

  explicit TriangleRule(int order) {
    if (order == 1) {
      nodes.emplace_back(1.0 / 3.0, 1.0 / 3.0);
      weights.push_back(1.0);
      return;
    }
    // Collapsed (Duffy) map: (u, v) -> b = u (1 - v), c = u v, Jacobian 2u.
    const auto [x, w] = gauss_legendre(order);
    for (int i = 0; i < order; ++i)
      for (int j = 0; j < order; ++j) {
        nodes.emplace_back(x[i] * (1.0 - x[j]), x[i] * x[j]);
        weights.push_back(2.0 * x[i] * w[i] * w[j]);
      }
  }
};

/// Integrates f over the triangles, each split into k^2 similar pieces with
/// edges <= h.
template <typename Fn>
Complex integrate(const std::vector<Tri>& tris, double h, const QuadratureSpec& q, Fn&& f) {
  const TriangleRule rule(q.order);
  const std::size_t per_sub = rule.nodes.size();
  std::vector<std::size_t> ks;
  std::size_t total = 0;
  for (const auto& t : tris) {
    const double kk = std::ceil(max_edge(t) / h);
    if (kk * kk * static_cast<double>(per_sub) > static_cast<double>(q.max_points))
      throw BudgetExceeded("quadrature mesh exceeds max_points");
    const auto k = std::max<std::size_t>(1, static_cast<std::size_t>(kk));
    ks.push_back(k);
    total += k * k * per_sub;
    if (total > q.max_points)
      throw BudgetExceeded("quadrature mesh needs " + std::to_string(total) + "+ points, budget " +
                           std::to_string(q.max_points));
  }

  Complex acc{0.0, 0.0};
  for (std::size_t ti = 0; ti < tris.size(); ++ti) {
    const Tri& t = tris[ti];
    const std::size_t k = ks[ti];
    const double inv = 1.0 / static_cast<double>(k);
    const Vec3 eb = (t[1] - t[0]) * inv;
    const Vec3 ec = (t[2] - t[0]) * inv;
    const double sub_area = 0.5 * eb.cross(ec).norm();
    Complex tri_acc{0.0, 0.0};
    auto sub = [&](const Point3& o, const Vec3& b, const Vec3& c) {
      for (std::size_t n = 0; n < per_sub; ++n)
        tri_acc += rule.weights[n] * f(Point3(o + rule.nodes[n].x() * b + rule.nodes[n].y() * c));
    };
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = 0; i + j < k; ++j) {
        const Point3 p = t[0] + static_cast<double>(i) * eb + static_cast<double>(j) * ec;
        sub(p, eb, ec);                                    // upright
        if (i + j + 2 <= k) sub(Point3(p + eb + ec), -eb, -ec);  // inverted
      }
    }
    acc += sub_area * tri_acc;
  }
  return acc;
}

}  // namespace

Complex ft_quadrature(const PolygonSet& set, const Wavevector& nu, const QuadratureSpec& q, KernelSign sign) {
  q.validate();
  if (set.empty()) return {0.0, 0.0};
  const auto comp = frame_components(nu, set.frame().normal);
  double h = 0.0;
  if (q.step) {
    h = *q.step;
  } else {
    const double freq = std::max(comp.par.norm(), 1.0 / set.diameter());
    h = 1.0 / (freq * q.samples_per_wavelength);
  }
  const Vec3 k = sign_value(sign) * kTwoPi * nu.vec();
  return integrate(mesh_triangles(set), h, q, [&](const Point3& x) {
    const double ph = k.dot(x);
    return Complex{std::cos(ph), std::sin(ph)};
  });
}

Raster Raster::covering(const PlaneFrame& frame, const Vec2& lo, const Vec2& hi, std::uint32_t n) {
  if (n < 1) throw std::invalid_argument("raster needs at least one pixel");
  const Vec2 span = hi - lo;
  Raster r;
  r.frame = frame;
  r.pixel = std::max(span.x(), span.y()) / n;
  if (!(r.pixel > 0.0)) throw std::invalid_argument("raster bounds are empty");
  r.lo = lo - Vec2::Constant(r.pixel);
  r.nx = static_cast<std::uint32_t>(std::ceil(span.x() / r.pixel - 1e-9)) + 2;
  r.ny = static_cast<std::uint32_t>(std::ceil(span.y() / r.pixel - 1e-9)) + 2;
  return r;
}

GridGeometry Raster::geometry() const {
  GridGeometry g;
  g.origin = frame.to_world(lo + Vec2::Constant(0.5 * pixel));
  g.axes = {pixel * frame.u, pixel * frame.v, Vec3::Zero()};
  g.dims = {nx, ny, 1};
  return g;
}

Raster automean_raster(const PolygonSet& set, std::uint32_t n) {
  planar::Box box;
  for (const auto& p : set.parts())
    for (const auto& v : p.local(set.frame())) box.extend(v);
  return Raster::covering(set.frame(), box.lo, box.hi, n);
}

GridField automean_brute(const PolygonSet& set, std::size_t n_pairs, const Raster& raster, std::uint64_t seed) {
  if (n_pairs < 10'000) throw std::invalid_argument("automean_brute needs at least 1e4 pairs");
  GridField out(raster.geometry(), 1, units::kCount);
  if (set.empty()) return out;

  std::vector<std::array<Vec2, 3>> tris;
  std::vector<double> areas;
  for (const auto& part : set.parts()) {
    auto r = part.local(set.frame());
    if (planar::signed_area(r) < 0.0) std::reverse(r.begin(), r.end());
    for (const auto& t : planar::triangulate(r)) {
      tris.push_back(t);
      areas.push_back(0.5 * std::abs(planar::cross(t[1] - t[0], t[2] - t[0])));
    }
  }
  std::mt19937_64 rng(seed);
  std::discrete_distribution<std::size_t> pick(areas.begin(), areas.end());
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  auto draw = [&] {
    const auto& t = tris[pick(rng)];
    const double s = std::sqrt(uni(rng));
    const double w = uni(rng);
    return Vec2((1.0 - s) * t[0] + s * (1.0 - w) * t[1] + s * w * t[2]);
  };
  for (std::size_t n = 0; n < n_pairs; ++n) {
    const Vec2 m = 0.5 * (draw() + draw());
    const Vec2 cell = (m - raster.lo) / raster.pixel;
    const auto i = static_cast<long>(std::floor(cell.x()));
    const auto j = static_cast<long>(std::floor(cell.y()));
    if (i < 0 || j < 0 || i >= static_cast<long>(raster.nx) || j >= static_cast<long>(raster.ny)) continue;
    out.at(out.geometry.flat(i, j)) += 1.0;
  }
  return out;
}

GridField coverage(const PolygonSet& set, const Raster& raster) {
  GridField out(raster.geometry(), 1, units::kDimensionless);
  const double px = raster.pixel;
  const PolygonSet convex = set.convex_pieces();
  for (const auto& piece : convex.parts()) {
    auto r = piece.local(raster.frame);
    if (planar::signed_area(r) < 0.0) std::reverse(r.begin(), r.end());
    const auto box = planar::bounds(r);
    const long i0 = std::max(0L, static_cast<long>(std::floor((box.lo.x() - raster.lo.x()) / px)));
    const long j0 = std::max(0L, static_cast<long>(std::floor((box.lo.y() - raster.lo.y()) / px)));
    const long i1 = std::min<long>(raster.nx - 1, static_cast<long>(std::floor((box.hi.x() - raster.lo.x()) / px)));
    const long j1 = std::min<long>(raster.ny - 1, static_cast<long>(std::floor((box.hi.y() - raster.lo.y()) / px)));
    for (long j = j0; j <= j1; ++j) {
      for (long i = i0; i <= i1; ++i) {
        const Vec2 a = raster.lo + Vec2(i * px, j * px);
        const planar::Ring cell{a, a + Vec2(px, 0), a + Vec2(px, px), a + Vec2(0, px)};
        const auto c = planar::clip_convex(cell, r);
        if (!c.empty()) out.at(out.geometry.flat(i, j)) += planar::signed_area(c) / (px * px);
      }
    }
  }
  return out;
}

double iou(const GridField& a, double threshold_a, const GridField& b, double threshold_b) {
  if (a.geometry.size() != b.geometry.size()) throw std::invalid_argument("iou: masks differ in size");
  std::size_t inter = 0, uni = 0;
  for (std::size_t n = 0; n < a.geometry.size(); ++n) {
    const bool in_a = a.at(n) > threshold_a;
    const bool in_b = b.at(n) > threshold_b;
    inter += in_a && in_b;
    uni += in_a || in_b;
  }
  return uni == 0 ? 1.0 : static_cast<double>(inter) / static_cast<double>(uni);
}

Complex kirchhoff_field(const PolygonSet& aperture, const Point3& x, double wavelength, const QuadratureSpec& q) {
  q.validate();
  if (!(wavelength > 0.0)) throw std::invalid_argument("wavelength must be positive");
  const PlaneFrame& f = aperture.frame();
  const double z = std::abs(f.height(x));
  if (z <= tol::plane) throw std::invalid_argument("kirchhoff_field: observation point lies in the aperture plane");
  if (aperture.empty()) return {0.0, 0.0};
  const double h = q.step ? *q.step : std::min(wavelength, 2.0 * z) / q.samples_per_wavelength;
  const double k = kTwoPi / wavelength;
  const Complex sum = integrate(mesh_triangles(aperture), h, q, [&](const Point3& p) {
    const double r = (x - p).norm();
    const double amp = z / (r * r);  // (1/r) * cos(theta)
    return Complex{amp * std::cos(k * r), amp * std::sin(k * r)};
  });
  return sum / Complex{0.0, wavelength};
}

Complex fraunhofer_rect(double a, double b, const Wavevector& nu) {
  if (!(a > 0.0) || !(b > 0.0)) throw std::invalid_argument("rectangle sides must be positive");
  return {a * b * sinc(a * nu.x()) * sinc(b * nu.y()), 0.0};
}

}  // namespace pw
