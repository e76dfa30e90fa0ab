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

#include "fixtures.hpp"

#include "polywigner/oracles.hpp"
#include "polywigner/transforms.hpp"

#include <doctest.h>

#include <random>

using namespace pw;
using fixtures::rect;

namespace {

constexpr double k2OverPi = 2.0 / kPi;

double rel(Complex a, Complex b, double floor) { return std::abs(a - b) / std::max(std::abs(b), floor); }

}  // namespace

TEST_CASE("sinc is normalised and smooth at the origin") {
  CHECK(sinc(0.0) == 1.0);
  CHECK(std::abs(sinc(1.0)) < 1e-16);
  CHECK(sinc(0.5) == doctest::Approx(k2OverPi).epsilon(1e-15));
  for (double x : {1e-9, 3e-6, 2e-5, 4e-5}) {
    const double px = kPi * x;
    const double ref = 1.0 - px * px / 6.0 + px * px * px * px / 120.0;
    CHECK(sinc(x) == doctest::Approx(ref).epsilon(1e-15));
    CHECK(sinc(-x) == sinc(x));
  }
}

TEST_CASE("segment transform") {
  const Segment1D seg(Point3(-0.5, 0, 0), Point3(0.5, 0, 0));
  const Complex perp = sft_segment(Wavevector(0, 3, 1), seg);
  CHECK(perp.real() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(std::abs(perp.imag()) < 1e-15);
  CHECK(std::abs(sft_segment(Wavevector(1, 0, 0), seg)) < 1e-15);

  // 1D midpoint rule of the defining integral.
  const double nu = 0.5;
  const int n = 20000;
  Complex q = 0;
  for (int i = 0; i < n; ++i) {
    const double x = -0.5 + (i + 0.5) / n;
    q += std::exp(Complex(0, -kTwoPi * nu * x)) / double(n);
  }
  const Complex f = sft_segment(Wavevector(nu, 0, 0), seg);
  CHECK(std::abs(f - q) < 1e-8);
  CHECK(f.real() == doctest::Approx(k2OverPi).epsilon(1e-14));

  const Segment1D off(Point3(1.0, 0, 0), Point3(2.0, 0, 0));
  const Complex g = sft_segment(Wavevector(nu, 0, 0), off);
  CHECK(std::abs(g - k2OverPi * std::exp(Complex(0, -kTwoPi * nu * 1.5))) < 1e-14);
}

TEST_CASE("polygon transform matches the separable closed form") {
  const auto sq = fixtures::unit_square().parts()[0];
  for (double k : {0.0, 1.0, -7.5}) {
    const Complex f = sft_polygon(Wavevector(0, 0, k), sq);
    CHECK(f.real() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(std::abs(f.imag()) < 1e-15);
  }
  CHECK(std::abs(sft_polygon(Wavevector(1, 0, 0), sq)) < 1e-14);

  const Complex f = sft_polygon(Wavevector(0.5, 0.25, 0), sq);
  CHECK(std::abs(f - sinc(0.5) * sinc(0.25)) < 1e-14);

  // Rectangles off the origin, with an out-of-plane component and an offset plane.
  const Polygon r = rect(0.3, -1.2, 2.0, 0.5, 0.7);
  for (const Wavevector& nu : {Wavevector(0.4, 1.1, 2.0), Wavevector(-3.0, 0.2, 0.0), Wavevector(0.0, 7.3, -1.0)}) {
    const Complex ref = 1.0 * sinc(2.0 * nu.x()) * sinc(0.5 * nu.y()) *
                        std::exp(Complex(0, -kTwoPi * (0.3 * nu.x() - 1.2 * nu.y() + 0.7 * nu.z())));
    CHECK(rel(sft_polygon(nu, r), ref, 1e-6) < 1e-12);
  }
}

TEST_CASE("polygon transform agrees with quadrature on non-convex shapes") {
  QuadratureSpec q;
  q.order = 6;
  q.step = 1.0 / 32;
  for (const Polygon& p : {fixtures::l_hexagon(), fixtures::chevron(0.2, -0.1, 0.1)}) {
    const PolygonSet set({p});
    for (const Wavevector& nu : {Wavevector(0.3, -0.8, 0), Wavevector(2.1, 1.7, 0), Wavevector(-4.0, 0.5, 0)}) {
      const Complex oracle = ft_quadrature(set, nu, q);
      CHECK(rel(sft_polygon(nu, p), oracle, 1e-6 * p.area()) < 1e-9);
    }
  }
}

TEST_CASE("polyhedron transform") {
  const auto cube = fixtures::unit_cube();
  const Complex zero = sft_polyhedron(Wavevector(0, 0, 0), cube);
  CHECK(zero.real() == doctest::Approx(1.0).epsilon(1e-15));
  const Complex tiny = sft_polyhedron(Wavevector(1e-11, 0, 0), cube);
  CHECK(tiny.real() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(sft_polyhedron(Wavevector(1, 0, 0), cube)) < 1e-13);
  CHECK(std::abs(sft_polyhedron(Wavevector(0.5, 0, 0), cube) - k2OverPi) < 1e-13);

  const auto box = fixtures::box(Point3(0.5, -0.25, 1.0), Vec3(1.0, 2.0, 0.5));
  for (const Wavevector& nu : {Wavevector(0.3, 0.2, -0.7), Wavevector(1.3, -0.4, 2.2), Wavevector(1e-5, 0, 0)}) {
    const Complex ref = sinc(nu.x()) * 2.0 * sinc(2.0 * nu.y()) * 0.5 * sinc(0.5 * nu.z()) *
                        std::exp(Complex(0, -kTwoPi * (0.5 * nu.x() - 0.25 * nu.y() + 1.0 * nu.z())));
    CHECK(rel(sft_polyhedron(nu, box), ref, 1e-6) < 1e-9);
  }
}

TEST_CASE("collections") {
  const Polygon sq = fixtures::unit_square().parts()[0];
  const std::vector<Radiator> one{sq};
  const Wavevector nu(0.3, -0.2, 0.1);
  CHECK(std::abs(sft_collection(nu, one, CombineMode::Sum) - sft_polygon(nu, sq)) < 1e-15);

  const auto two = fixtures::two_squares();
  const std::vector<Radiator> parts{two.parts()[0], two.parts()[1]};
  QuadratureSpec q;
  q.order = 6;
  q.step = 0.25;
  for (const Wavevector& k : {Wavevector(0.37, 0.1, 0), Wavevector(1.5, -0.8, 0)}) {
    const Complex s = sft_collection(k, parts, CombineMode::Sum);
    const Complex ref = sinc(k.x()) * sinc(k.y()) * (1.0 + std::exp(Complex(0, -kTwoPi * 10.0 * k.x())));
    CHECK(std::abs(s - ref) < 1e-13);
    CHECK(rel(s, ft_quadrature(two, k, q), 1e-6 * two.area()) < 1e-9);
  }
}

TEST_CASE("directional collections") {
  const Segment1D seg(Point3(-0.5, 0, 0), Point3(0.5, 0, 0));
  const std::vector<Radiator> segs{seg};
  CHECK(std::abs(sft_collection(Wavevector(0, 0.5, 0), segs, CombineMode::Directional) - 1.0) < 1e-15);
  CHECK(std::abs(sft_collection(Wavevector(0.5, 0, 0), segs, CombineMode::Directional)) < 1e-15);
  const Wavevector diag(0.3, 0.4, 0);
  CHECK(std::abs(sft_collection(diag, segs, CombineMode::Directional) - 0.4 * sft_segment(diag, seg)) < 1e-15);

  const Polygon sq = fixtures::unit_square().parts()[0];
  const std::vector<Radiator> polys{sq};
  const Wavevector oblique(0.3, 0, 0.4);
  CHECK(std::abs(sft_collection(oblique, polys, CombineMode::Directional) - 0.8 * sft_polygon(oblique, sq)) < 1e-15);

  CHECK_THROWS_AS(sft_collection(Wavevector(), polys, CombineMode::Directional), ZeroFrequency);
  const std::vector<Radiator> solids{fixtures::unit_cube()};
  CHECK_THROWS_AS(sft_collection(oblique, solids, CombineMode::Directional), std::invalid_argument);
  const std::vector<Radiator> mixed{seg, sq};
  CHECK_THROWS_AS(sft_collection(oblique, mixed, CombineMode::Sum), std::invalid_argument);
}

TEST_CASE("symmetries of the transform") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    PlaneFrame frame;
    const Polygon p = fixtures::random_polygon(rng, 3 + trial % 10, 5.0, &frame);
    const Wavevector nu(2.0 * u(rng) * frame.u + 2.0 * u(rng) * frame.v + 0.5 * u(rng) * frame.normal);
    const Complex f = sft_polygon(nu, p);

    CHECK(std::abs(sft_polygon(-nu, p) - std::conj(f)) < 1e-12);
    CHECK(std::abs(sft_polygon(nu, p, KernelSign::Positive) - std::conj(f)) < 1e-12);

    const Vec3 a(u(rng), u(rng), u(rng));
    const Polygon moved = apply_map(make_translation(a), p);
    const Complex expected = f * std::exp(Complex(0, -kTwoPi * nu.vec().dot(a)));
    CHECK(rel(sft_polygon(nu, moved), expected, 1e-6 * p.area()) < 1e-10);
  }
}

TEST_CASE("transform is continuous across the zero in-plane frequency switch") {
  const Polygon p = fixtures::chevron(0.1, 0.3, 0.05);
  const Complex limit = sft_polygon(Wavevector(0, 0, 2.0), p);
  CHECK(limit.real() == doctest::Approx(p.area() * std::cos(0.0)));
  for (const double eps : {1.01 * tol::wavevector, 2e-9, 1e-8}) {
    const Complex just_above = sft_polygon(Wavevector(eps, 0, 2.0), p);
    CHECK(std::abs(just_above - limit) < 1e-6 * p.area());
  }
  const Polygon lifted = rect(0, 0, 1, 1, 0.25);
  const Complex ph = sft_polygon(Wavevector(0, 0, 1.0), lifted);
  CHECK(std::abs(ph - std::exp(Complex(0, -kTwoPi * 0.25))) < 1e-15);
}

TEST_CASE("Parseval over a wide band") {
  // |F|^2 of the unit square is band-limited in its autocorrelation, so a
  // midpoint rule with step 1/4 is exact apart from band truncation.
  const Polygon sq = fixtures::unit_square().parts()[0];
  const double band = 32.0;
  const double h = 0.25;
  const int n = static_cast<int>(2 * band / h);
  double sum = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      sum += std::norm(sft_polygon(Wavevector(-band + (i + 0.5) * h, -band + (j + 0.5) * h, 0), sq));
  CHECK(sum * h * h == doctest::Approx(1.0).epsilon(0.02));
}
