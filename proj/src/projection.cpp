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

#include "polywigner/radiometry.hpp"

#include "planar.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace pw {

std::string to_string(Bilinear b) {
  switch (b) {
    case Bilinear::Acf: return "acf";
    case Bilinear::Wigner: return "wigner";
    case Bilinear::Ambiguity: return "ambiguity";
  }
  return "?";
}

namespace {

struct Box2 {
  Vec2 lo, hi;
  Vec2 span() const { return hi - lo; }
};

// The 4D function in aperture-frame coordinates, f(p, q).
struct Function4 {
  const TransmitterScene& scene;
  Bilinear which;
  PlaneFrame frame;

  Complex operator()(const Vec2& p, const Vec2& q) const {
    const PreparedAperture& ap = scene.prepared();
    const double power = scene.power();
    switch (which) {
      case Bilinear::Acf: {
        const Point3 x = frame.to_world(p);
        const Vec3 xi = q.x() * frame.u + q.y() * frame.v;
        return ap.contains(x + 0.5 * xi) && ap.contains(x - 0.5 * xi) ? power : 0.0;
      }
      case Bilinear::Wigner:
        return power * ap.wigner(frame.to_world(p), Wavevector(q.x() * frame.u + q.y() * frame.v));
      case Bilinear::Ambiguity:
        return power * ap.ambiguity(Wavevector(q.x() * frame.u + q.y() * frame.v), p.x() * frame.u + p.y() * frame.v);
    }
    return {};
  }
};

Tile make_tile(const Box2& a, const Box2& b, std::uint32_t res, const std::string& tag) {
  GridGeometry g;
  const Vec2 sa = a.span() / res, sb = b.span() / res;
  g.origin = Point3(a.lo.x() + 0.5 * sa.x(), b.lo.x() + 0.5 * sb.x(), 0.0);
  g.axes = {Vec3(sa.x(), 0, 0), Vec3(0, sb.x(), 0), Vec3::Zero()};
  g.dims = {res, res, 1};
  Tile t;
  t.real = GridField(g, 1, tag);
  return t;
}

}  // namespace

TileSet project_tiles(const TransmitterScene& scene, Bilinear which, const ProjectionSpec& spec) {
  if (spec.resolution < 1 || spec.n_samples < 1) throw std::invalid_argument("projection needs resolution and samples >= 1");
  const PlaneFrame& frame = scene.radiators().frame();

  planar::Box support;
  for (const auto& p : scene.automean().parts())
    for (const auto& v : p.local(frame)) support.extend(v);
  if (scene.automean().empty()) throw std::invalid_argument("projection of an empty aperture");
  const Vec2 ext = support.hi - support.lo;
  const double band = spec.band > 0.0 ? spec.band : 4.0 / std::max(ext.minCoeff(), 1e-300);
  // The lag support of G is G - G; its box is twice the automean box, centred.
  const Box2 pos{support.lo, support.hi};
  const Box2 lag{-ext, ext};
  const Box2 freq{Vec2::Constant(-band), Vec2::Constant(band)};

  Box2 first, second;
  switch (which) {
    case Bilinear::Acf: first = pos; second = lag; break;
    case Bilinear::Wigner: first = pos; second = freq; break;
    case Bilinear::Ambiguity: first = lag; second = freq; break;
  }
  const Function4 f{scene, which, frame};
  const std::string tag = "proj:" + to_string(which);
  const std::uint32_t res = spec.resolution;

  TileSet out;
  out.which = which;
  out.first = make_tile(first, first, res, tag);
  out.second = make_tile(second, second, res, tag);
  out.hybrid = make_tile(first, second, res, tag);
  // make_tile lays its two boxes' x ranges on the tile axes; the diagonal
  // tiles need (x, y) of one box instead.
  for (Tile* t : {&out.first, &out.second}) {
    const Box2& b = t == &out.first ? first : second;
    const Vec2 s = b.span() / res;
    auto& g = t->real.geometry;
    g.origin = Point3(b.lo.x() + 0.5 * s.x(), b.lo.y() + 0.5 * s.y(), 0.0);
    g.axes = {Vec3(s.x(), 0, 0), Vec3(0, s.y(), 0), Vec3::Zero()};
  }

  std::vector<double> imag(3 * static_cast<std::size_t>(res) * res, 0.0);
  const std::size_t pixels = static_cast<std::size_t>(res) * res;
  const std::size_t n = spec.n_samples;
  parallel_for(3 * pixels, [&](std::size_t k) {
    const std::size_t tile = k / pixels, pix = k % pixels;
    const std::size_t i = pix % res, j = pix / res;
    auto rng = stream_rng(spec.seed, k);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    auto in = [&](const Box2& b, double ux, double uy) {
      return Vec2(b.lo.x() + ux * b.span().x(), b.lo.y() + uy * b.span().y());
    };
    const double ci = (i + 0.5) / res, cj = (j + 0.5) / res;
    Complex acc{0.0, 0.0};
    double measure = 0.0;
    for (std::size_t s = 0; s < n; ++s) {
      const double u1 = uni(rng), u2 = uni(rng);
      if (tile == 0) {
        acc += f(in(first, ci, cj), in(second, u1, u2));
        measure = second.span().prod();
      } else if (tile == 1) {
        acc += f(in(first, u1, u2), in(second, ci, cj));
        measure = first.span().prod();
      } else {
        acc += f(in(first, ci, u1), in(second, cj, u2));
        measure = first.span().y() * second.span().y();
      }
    }
    acc *= measure / static_cast<double>(n);
    Tile& t = tile == 0 ? out.first : tile == 1 ? out.second : out.hybrid;
    t.real.at(pix) = acc.real();
    imag[k] = acc.imag();
  });

  for (std::size_t tile = 0; tile < 3; ++tile) {
    Tile& t = tile == 0 ? out.first : tile == 1 ? out.second : out.hybrid;
    t.max_imag = 0.0;
    t.min_value = std::numeric_limits<double>::infinity();
    for (std::size_t p = 0; p < pixels; ++p) {
      t.max_imag = std::max(t.max_imag, std::abs(imag[tile * pixels + p]));
      t.min_value = std::min(t.min_value, t.real.at(p));
    }
  }
  return out;
}

}  // namespace pw
