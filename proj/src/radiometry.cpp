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

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pw {

TransmitterScene::TransmitterScene(PolygonSet radiators, double wavelength, double power, KernelSign sign)
    : radiators_(std::move(radiators)),
      automean_(minkowski_automean(radiators_)),
      wavelength_(wavelength),
      power_(power) {
  if (!(wavelength > 0.0) || !std::isfinite(wavelength)) throw std::invalid_argument("wavelength must be positive");
  if (!(power >= 0.0) || !std::isfinite(power)) throw std::invalid_argument("illumination power must be non-negative");
  prepared_ = std::make_shared<const PreparedAperture>(radiators_, sign);
  sampler_ = std::make_shared<const AreaSampler>(automean_);
}

double TransmitterScene::wigner(const Point3& x, const Wavevector& nu) const {
  return power_ * prepared_->wigner(x, nu).real();
}

double radiance_wigner(double w, double area, double wavelength) {
  if (!(area > 0.0) || !(wavelength > 0.0)) throw std::invalid_argument("area and wavelength must be positive");
  return w / (4.0 * kPi * area * wavelength * wavelength);
}

void HemisphereQuadrature::validate() const {
  if (n_theta < 1 || n_phi < 1) throw std::invalid_argument("hemisphere quadrature needs at least one cell");
}

namespace {

struct Direction {
  Vec3 dir;
  double d_omega;
};

std::vector<Direction> hemisphere(const Vec3& n, const HemisphereQuadrature& q) {
  q.validate();
  const PlaneFrame f = PlaneFrame::from_plane(n, 0.0);
  const double dt = 0.5 * kPi / q.n_theta;
  const double dp = kTwoPi / q.n_phi;
  std::vector<Direction> out;
  out.reserve(static_cast<std::size_t>(q.n_theta) * q.n_phi);
  for (int i = 0; i < q.n_theta; ++i) {
    const double t = (i + 0.5) * dt;
    for (int j = 0; j < q.n_phi; ++j) {
      const double p = (j + 0.5) * dp;
      out.push_back({std::sin(t) * (std::cos(p) * f.u + std::sin(p) * f.v) + std::cos(t) * n,
                     std::sin(t) * dt * dp});
    }
  }
  return out;
}

}  // namespace

Vec3 flux_vector(const TransmitterScene& scene, const Point3& x, const HemisphereQuadrature& q) {
  if (!x.allFinite()) throw std::invalid_argument("flux_vector: position must be finite");
  const double lam = scene.wavelength();
  const double scale = 1.0 / (scene.aperture_area() * lam * lam);
  Vec3 acc = Vec3::Zero();
  if (scene.prepared().lag_area(x) <= 0.0) return acc;
  for (const auto& d : hemisphere(scene.normal(), q))
    acc += d.d_omega * scene.wigner(x, Wavevector(d.dir / lam)) * d.dir;
  return scale * acc;
}

Estimate spectral_intensity(const TransmitterScene& scene, const Wavevector& nu, std::size_t n_samples,
                            std::uint64_t seed) {
  if (n_samples < 1) throw std::invalid_argument("spectral_intensity needs at least one sample");
  if (scene.sampler().empty()) return {};
  auto rng = stream_rng(seed, 0);
  return scene.sampler().integrate([&](const Point3& x) { return scene.wigner(x, nu); }, n_samples, rng);
}

PowerResult total_power(const TransmitterScene& scene, const HemisphereQuadrature& q, std::size_t n_samples,
                        std::uint64_t seed) {
  if (n_samples < 1) throw std::invalid_argument("total_power needs at least one sample");
  const double lam = scene.wavelength();
  PowerResult res;
  const double a = scene.aperture_area();
  if (scene.sampler().empty() || !(a > 0.0)) return res;
  const double pre = 1.0 / (4.0 * kPi * a * lam * lam);
  res.reference = pre * a * scene.power();

  const auto dirs = hemisphere(scene.normal(), q);
  const std::size_t batches = std::min<std::size_t>(8, n_samples);
  auto rng = stream_rng(seed, 0);
  std::vector<double> vals;
  std::vector<double> per_dir(dirs.size());
  for (std::size_t b = 0; b < batches; ++b) {
    const std::size_t m = n_samples / batches + (b < n_samples % batches ? 1 : 0);
    const AreaSample s = scene.sampler().draw(m, rng);
    parallel_for(dirs.size(), [&](std::size_t k) {
      const Wavevector nu(dirs[k].dir / lam);
      double acc = 0.0;
      for (std::size_t i = 0; i < s.points.size(); ++i) acc += s.weights[i] * scene.wigner(s.points[i], nu);
      per_dir[k] = acc * dirs[k].d_omega / (lam * lam);
    });
    double total = 0.0;
    for (double v : per_dir) total += v;
    vals.push_back(pre * total);
  }
  res.power = combine_batches(vals);
  return res;
}

Vec3 transport_contribution(double w, const Vec3& normal, const Vec3& r, double area, double wavelength) {
  const double len = r.norm();
  if (!(len > 0.0)) return Vec3::Zero();
  const Vec3 dir = r / len;
  const double facing = std::max(0.0, normal.dot(dir));
  if (facing == 0.0) return Vec3::Zero();
  return (w * facing * area / (len * len * wavelength * wavelength)) * dir;
}

VectorEstimate transport_flux(const TransmitterScene& scene, const Point3& target, std::size_t n_samples,
                              std::mt19937_64& rng) {
  if (n_samples < 1) throw std::invalid_argument("transport_flux needs at least one sample");
  VectorEstimate out;
  const auto& sampler = scene.sampler();
  if (sampler.empty()) return out;
  const double lam = scene.wavelength();
  const Vec3& n = scene.normal();
  const std::size_t batches = std::min<std::size_t>(8, n_samples);
  std::vector<Vec3> vals;
  vals.reserve(batches);
  for (std::size_t b = 0; b < batches; ++b) {
    const std::size_t m = n_samples / batches + (b < n_samples % batches ? 1 : 0);
    const AreaSample s = sampler.draw(m, rng);
    Vec3 acc = Vec3::Zero();
    for (std::size_t i = 0; i < s.points.size(); ++i) {
      const Vec3 r = target - s.points[i];
      const double len = r.norm();
      if (!(len > 0.0) || n.dot(r) <= 0.0) continue;
      const double w = scene.wigner(s.points[i], Wavevector(r / (len * lam)));
      acc += transport_contribution(w, n, r, s.weights[i], lam);
    }
    vals.push_back(acc);
  }
  for (const auto& v : vals) out.value += v;
  out.value /= static_cast<double>(vals.size());
  if (vals.size() > 1) {
    Vec3 ss = Vec3::Zero();
    for (const auto& v : vals) ss += (v - out.value).cwiseAbs2();
    const double k = static_cast<double>(vals.size());
    out.std_error = (ss / ((k - 1.0) * k)).cwiseSqrt();
  }
  return out;
}

void RenderOptions::validate() const {
  if (n_samples < 1) throw std::invalid_argument("render needs at least one sample per node");
}

GridField render_grid(const TransmitterScene& scene, const GridGeometry& grid, const RenderOptions& opt) {
  opt.validate();
  grid.validate();
  const double work = static_cast<double>(grid.size()) * static_cast<double>(opt.n_samples);
  if (work > opt.max_evaluations)
    throw BudgetExceeded("render needs " + std::to_string(work) + " evaluations, budget " +
                         std::to_string(opt.max_evaluations));
  GridField out(grid, opt.vector ? 3 : 1, units::kFlux);
  parallel_for(grid.size(), [&](std::size_t i) {
    auto rng = stream_rng(opt.seed, i);
    const Vec3 s = transport_flux(scene, grid.node(i), opt.n_samples, rng).value;
    if (opt.vector) {
      for (int c = 0; c < 3; ++c) out.at(i, c) = s[c];
    } else {
      out.at(i) = s.norm();
    }
  });
  return out;
}

namespace {
Vec3 step(const Vec3& extent, std::uint32_t n) { return n > 1 ? Vec3(extent / (n - 1.0)) : Vec3::Zero(); }
}  // namespace

GridGeometry line_grid(const Point3& start, const Point3& end, std::uint32_t n) {
  GridGeometry g;
  g.origin = start;
  g.dims = {n, 1, 1};
  g.axes[0] = step(end - start, n);
  return g;
}

GridGeometry plane_grid(const Point3& origin, const Vec3& eu, const Vec3& ev, std::uint32_t nu, std::uint32_t nv) {
  GridGeometry g;
  g.origin = origin;
  g.dims = {nu, nv, 1};
  g.axes = {step(eu, nu), step(ev, nv), Vec3::Zero()};
  return g;
}

GridGeometry volume_grid(const Point3& origin, const Vec3& eu, const Vec3& ev, const Vec3& ew, std::uint32_t nu,
                         std::uint32_t nv, std::uint32_t nw) {
  GridGeometry g;
  g.origin = origin;
  g.dims = {nu, nv, nw};
  g.axes = {step(eu, nu), step(ev, nv), step(ew, nw)};
  return g;
}

GridField render_line(const TransmitterScene& scene, const Point3& start, const Point3& end, std::uint32_t n,
                      const RenderOptions& opt) {
  return render_grid(scene, line_grid(start, end, n), opt);
}

GridField render_plane(const TransmitterScene& scene, const Point3& origin, const Vec3& eu, const Vec3& ev,
                       std::uint32_t nu, std::uint32_t nv, const RenderOptions& opt) {
  return render_grid(scene, plane_grid(origin, eu, ev, nu, nv), opt);
}

GridField render_volume(const TransmitterScene& scene, const Point3& origin, const Vec3& eu, const Vec3& ev,
                        const Vec3& ew, std::uint32_t nu, std::uint32_t nv, std::uint32_t nw,
                        const RenderOptions& opt) {
  return render_grid(scene, volume_grid(origin, eu, ev, ew, nu, nv, nw), opt);
}

void PinholeCamera::validate() const {
  if (!(fov > 0.0 && fov < kPi)) throw std::invalid_argument("camera fov must lie in (0, pi)");
  if (width < 1 || height < 1) throw std::invalid_argument("camera resolution must be at least 1x1");
  const Vec3 f = look_at - position;
  if (!(f.norm() > 0.0) || !(f.normalized().cross(up).norm() > 1e-9))
    throw std::invalid_argument("camera look direction must be nonzero and not parallel to up");
}

namespace {
struct CameraBasis {
  Vec3 forward, right, up;
  double tan_half;
};
CameraBasis basis(const PinholeCamera& c) {
  const Vec3 f = (c.look_at - c.position).normalized();
  const Vec3 r = f.cross(c.up).normalized();
  return {f, r, r.cross(f), std::tan(0.5 * c.fov)};
}
}  // namespace

Vec3 PinholeCamera::ray(std::uint32_t i, std::uint32_t j) const {
  const auto b = basis(*this);
  const double sx = (2.0 * (i + 0.5) / width - 1.0) * b.tan_half;
  const double sy = (2.0 * (j + 0.5) / height - 1.0) * b.tan_half * height / width;
  return (b.forward + sx * b.right + sy * b.up).normalized();
}

double PinholeCamera::pixel_solid_angle(std::uint32_t i, std::uint32_t j) const {
  const auto b = basis(*this);
  const double px = 2.0 * b.tan_half / width;
  const double c = ray(i, j).dot(b.forward);
  return px * px * c * c * c;
}

GridField render_camera(const TransmitterScene& scene, const PinholeCamera& cam, const GroundPlane& ground,
                        const RenderOptions& opt) {
  opt.validate();
  cam.validate();
  const double work = double(cam.width) * cam.height * double(opt.n_samples);
  if (work > opt.max_evaluations) throw BudgetExceeded("camera render exceeds the evaluation budget");
  const Vec3 gn = ground.normal.normalized();
  const double px = 2.0 * std::tan(0.5 * cam.fov) / cam.width;
  GridGeometry g;
  g.origin = Point3(-0.5 * (cam.width - 1) * px, -0.5 * (cam.height - 1) * px, 1.0);
  g.axes = {Vec3(px, 0, 0), Vec3(0, px, 0), Vec3::Zero()};
  g.dims = {cam.width, cam.height, 1};
  GridField out(g, 1, units::kFlux);
  const double eye = gn.dot(cam.position - ground.point);
  if (eye <= 0.0) return out;  // looking at the back of the ground
  parallel_for(g.size(), [&](std::size_t k) {
    const auto i = static_cast<std::uint32_t>(k % cam.width);
    const auto j = static_cast<std::uint32_t>(k / cam.width);
    const Vec3 d = cam.ray(i, j);
    const double denom = d.dot(gn);
    if (denom >= 0.0) return;
    const double t = -eye / denom;
    const Point3 hit = cam.position + t * d;
    auto rng = stream_rng(opt.seed, k);
    const Vec3 s = transport_flux(scene, hit, opt.n_samples, rng).value;
    const double e = std::max(0.0, -s.dot(gn));
    out.at(k) = e / kPi * cam.pixel_solid_angle(i, j);
  });
  return out;
}

}  // namespace pw
