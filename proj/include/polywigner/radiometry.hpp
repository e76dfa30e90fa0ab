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
#include "polywigner/phase_space.hpp"
#include "polywigner/sampling.hpp"

#include <cstdint>
#include <memory>
#include <string>

namespace pw {

/// Uniformly illuminated planar transmitter at one wavelength.
///
/// `power` scales the illumination intensity |u|^2 (1 = "unity").
class TransmitterScene {
 public:
  TransmitterScene(PolygonSet radiators, double wavelength, double power = 1.0,
                   KernelSign sign = KernelSign::Negative);

  const PolygonSet& radiators() const { return radiators_; }
  const PolygonSet& automean() const { return automean_; }
  double wavelength() const { return wavelength_; }
  double power() const { return power_; }
  const Vec3& normal() const { return radiators_.frame().normal; }
  double aperture_area() const { return radiators_.area(); }
  double automean_area() const { return automean_.area(); }
  const AreaSampler& sampler() const { return *sampler_; }

  /// W(x, nu) including the illumination power; real part of the bilinear
  /// form (the imaginary part vanishes up to rounding).
  double wigner(const Point3& x, const Wavevector& nu) const;
  const PreparedAperture& prepared() const { return *prepared_; }

 private:
  PolygonSet radiators_;
  PolygonSet automean_;
  double wavelength_;
  double power_;
  std::shared_ptr<const PreparedAperture> prepared_;
  std::shared_ptr<const AreaSampler> sampler_;
};

/// Radiance at the source, w / (4 pi A lambda^2).
double radiance_wigner(double w, double area, double wavelength);

/// Midpoint rule over the front hemisphere in (theta, phi); dOmega = sin(theta) dtheta dphi.
struct HemisphereQuadrature {
  int n_theta = 64;
  int n_phi = 128;
  void validate() const;
};

/// Geometric flux vector: integral of nu/(A |nu|) W(x, nu) over the shell
/// |nu| = 1/lambda, with dnu = dOmega / lambda^2 and A the aperture area.
Vec3 flux_vector(const TransmitterScene& scene, const Point3& x, const HemisphereQuadrature& q = {});

/// Integral of W(x, nu) over the automean, by stratified Monte Carlo.
Estimate spectral_intensity(const TransmitterScene& scene, const Wavevector& nu, std::size_t n_samples,
                            std::uint64_t seed = 1);

struct PowerResult {
  Estimate power;      ///< [Sigma]
  double reference;    ///< Parseval value area / (4 pi A lambda^2)
};

/// Integral of the radiance Wigner function over automean x shell.
PowerResult total_power(const TransmitterScene& scene, const HemisphereQuadrature& q,
                        std::size_t n_samples, std::uint64_t seed = 1);

/// One phase-space component of the transport equation:
///   w * max(0, n.r^) r^ / |r|^2 * A / lambda^2.
Vec3 transport_contribution(double w, const Vec3& normal, const Vec3& r, double area, double wavelength);

/// Poynting flux at `target` from the whole transmitter, estimated with
/// n_samples stratified points on the automean (measure = automean area).
VectorEstimate transport_flux(const TransmitterScene& scene, const Point3& target, std::size_t n_samples,
                              std::mt19937_64& rng);

struct RenderOptions {
  std::size_t n_samples = 1000;
  std::uint64_t seed = 1;
  bool vector = false;  ///< store the flux vector instead of its magnitude
  double max_evaluations = 1e10;
  void validate() const;
};

/// Flux at every node of `grid`, node i drawing from stream (seed, i).
GridField render_grid(const TransmitterScene& scene, const GridGeometry& grid, const RenderOptions& opt);

GridGeometry line_grid(const Point3& start, const Point3& end, std::uint32_t n);
GridGeometry plane_grid(const Point3& origin, const Vec3& extent_u, const Vec3& extent_v, std::uint32_t nu,
                        std::uint32_t nv);
GridGeometry volume_grid(const Point3& origin, const Vec3& extent_u, const Vec3& extent_v, const Vec3& extent_w,
                         std::uint32_t nu, std::uint32_t nv, std::uint32_t nw);

GridField render_line(const TransmitterScene& scene, const Point3& start, const Point3& end, std::uint32_t n,
                      const RenderOptions& opt);
GridField render_plane(const TransmitterScene& scene, const Point3& origin, const Vec3& extent_u,
                       const Vec3& extent_v, std::uint32_t nu, std::uint32_t nv, const RenderOptions& opt);
GridField render_volume(const TransmitterScene& scene, const Point3& origin, const Vec3& extent_u,
                        const Vec3& extent_v, const Vec3& extent_w, std::uint32_t nu, std::uint32_t nv,
                        std::uint32_t nw, const RenderOptions& opt);

struct PinholeCamera {
  Point3 position{0.0, 0.0, 1.0};
  Point3 look_at{Point3::Zero()};
  Vec3 up{Vec3::UnitY()};
  double fov = 1.0;  ///< horizontal, radians
  std::uint32_t width = 64;
  std::uint32_t height = 64;

  void validate() const;
  /// Unit ray through the centre of pixel (i, j); j counts upwards.
  Vec3 ray(std::uint32_t i, std::uint32_t j) const;
  /// Solid angle subtended by pixel (i, j).
  double pixel_solid_angle(std::uint32_t i, std::uint32_t j) const;
};

/// Ideal diffuse, unit-albedo ground plane seen from its `normal` side.
struct GroundPlane {
  Point3 point{Point3::Zero()};
  Vec3 normal{Vec3::UnitZ()};
};

/// Per-pixel power through the pixel's solid angle, per unit collecting
/// area, after one diffuse bounce off the ground: L = E/pi with
/// E = max(0, -S.n), value = L * dOmega.
GridField render_camera(const TransmitterScene& scene, const PinholeCamera& cam, const GroundPlane& ground,
                        const RenderOptions& opt);

enum class Bilinear { Acf, Wigner, Ambiguity };

/// One 2D marginal of a 4D bilinear function.
struct Tile {
  GridField real;
  double max_imag = 0.0;
  double min_value = 0.0;
};

struct ProjectionSpec {
  std::uint32_t resolution = 32;
  std::size_t n_samples = 256;  ///< MC samples per pixel
  std::uint64_t seed = 1;
  /// Half-width of the conjugate (wavevector or shift) axes, R. Zero picks
  /// 4 / (smallest automean extent).
  double band = 0.0;
};

/// Diagonal tiles (first pair, second pair) and the hybrid tile (first[0],
/// second[0]). Coordinates: ACF (x, xi), Wigner (x, nu), Ambiguity (xi, upsilon),
/// expressed in the aperture frame.
struct TileSet {
  Bilinear which = Bilinear::Wigner;
  Tile first;
  Tile second;
  Tile hybrid;
};

TileSet project_tiles(const TransmitterScene& scene, Bilinear which, const ProjectionSpec& spec);

std::string to_string(Bilinear b);

}  // namespace pw
