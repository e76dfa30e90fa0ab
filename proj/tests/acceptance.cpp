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

// Acceptance run: one PASS/FAIL line per criterion. Settings and tolerances
// are fixed here and recorded in the README; nothing is tuned per run.

#include "fixtures.hpp"

#include "cli/app.hpp"
#include "polywigner/oracles.hpp"
#include "polywigner/phase_space.hpp"
#include "polywigner/radiometry.hpp"
#include "polywigner/transforms.hpp"

#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>

using namespace pw;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

// 1. Closed-form polygon transform against the quadrature oracle.
Outcome sft_oracle_equivalence() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(20260101);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  const double lambda = 1.0;
  QuadratureSpec q;
  q.order = 6;
  q.samples_per_wavelength = 4;
  double worst = 0.0;
  int evaluated = 0;
  for (int p = 0; p < 100; ++p) {
    const int n = 3 + static_cast<int>(rng() % 10);
    const double diameter = lambda * (1.0 + 19.0 * uni(rng));
    PlaneFrame frame;
    const Polygon poly = fixtures::random_polygon(rng, n, diameter, &frame);
    const PolygonSet set({poly});
    for (int k = 0; k < 20; ++k) {
      const double r = 2.0 / lambda * std::sqrt(uni(rng));
      const double a = kTwoPi * uni(rng);
      const Wavevector nu(r * std::cos(a) * frame.u + r * std::sin(a) * frame.v);
      const Complex oracle = ft_quadrature(set, nu, q);
      const double err = std::abs(sft_polygon(nu, poly) - oracle) / std::max(std::abs(oracle), 1e-6 * set.area());
      worst = std::max(worst, err);
      ++evaluated;
    }
  }
  const double t = seconds_since(t0);
  return {worst < 1e-5 && t < 60.0,
          fmt("%d polygon/wavevector pairs, worst relative error %.2e (limit 1e-05), %.1f s (limit 60 s)", evaluated,
              worst, t)};
}

// 2. Boresight Wigner transport against Kirchhoff beyond two wavelengths.
Outcome boresight_convergence() {
  const auto t0 = Clock::now();
  const double lam = fixtures::kLambda94GHz;
  const TransmitterScene scene(fixtures::patch10mm(), lam);
  RenderOptions opt;
  opt.n_samples = 10000;
  opt.seed = 7;
  const auto line = render_line(scene, Point3(0, 0, 2 * lam), Point3(0, 0, 50 * lam), 50, opt);
  QuadratureSpec q;
  q.order = 4;
  double worst = 0.0, at = 0.0;
  for (std::size_t i = 0; i < line.geometry.size(); ++i) {
    const Point3 p = line.geometry.node(i);
    const double k = std::norm(kirchhoff_field(scene.radiators(), p, lam, q));
    const double db = std::abs(10.0 * std::log10(line.at(i) / k));
    if (!(db <= worst)) worst = db, at = p.z() / lam;
  }
  const double t = seconds_since(t0);
  return {worst < 1.0 && t < 300.0,
          fmt("50 points 2-50 wavelengths, 1e4 samples: worst |Wigner/Kirchhoff| %.3f dB at %.1f wavelengths (limit 1 dB), "
              "%.1f s (limit 300 s)",
              worst, at, t)};
}

// 3. Spectral intensity of the 10 mm patch against the Fraunhofer pattern.
Outcome fraunhofer_consistency() {
  const double lam = fixtures::kLambda94GHz;
  const double a = 10e-3;
  const TransmitterScene scene(fixtures::patch10mm(), lam);
  auto dir = [&](double s) { return Wavevector(s / lam, 0, std::sqrt(1 - s * s) / lam); };
  const double peak = std::norm(fraunhofer_rect(a, a, Wavevector()));
  double worst = 0.0;
  for (int i = 0; i <= 20; ++i) {
    const double s = 0.95 * (lam / a) * i / 20;
    const double mc = spectral_intensity(scene, dir(s), 20000, 11).value;
    worst = std::max(worst, std::abs(mc - std::norm(fraunhofer_rect(a, a, dir(s)))) / peak);
  }
  double best = INFINITY, null_s = 0.0;
  for (int i = 0; i <= 300; ++i) {
    const double s = 0.25 + 0.15 * i / 300;
    const double v = spectral_intensity(scene, dir(s), 20000, 11).value;
    if (v < best) best = v, null_s = s;
  }
  const bool ok = worst < 0.02 && std::abs(null_s - 0.319) <= 0.005;
  return {ok, fmt("main-lobe error %.4f of peak (limit 0.02); first null at sin(theta) = %.4f (0.319 +/- 0.005)", worst,
                  null_s)};
}

// 4. Automean against dense midpoint sampling.
Outcome automean_iou() {
  struct Case {
    const char* name;
    PolygonSet set;
  };
  const std::vector<Case> cases{{"square", fixtures::unit_square()},
                                {"two squares", fixtures::two_squares()},
                                {"chevron pair", fixtures::chevron_pair()}};
  bool ok = true;
  std::string detail;
  for (const auto& c : cases) {
    const Raster r = automean_raster(c.set, 64);
    const GridField brute = automean_brute(c.set, 1'000'000, r, 3);
    const GridField cov = coverage(minkowski_automean(c.set), r);
    const double v = iou(cov, 0.0, brute, 0.0);
    ok = ok && v > 0.99;
    detail += fmt("%s%s %.4f", detail.empty() ? "" : ", ", c.name, v);
  }
  return {ok, "IoU at 1e6 pairs, 64-pixel raster (limit > 0.99): " + detail};
}

// 5. Phase-space consistency.
Outcome phase_space_suite() {
  // (a) W is real.
  const auto chev = fixtures::chevron_pair();
  const auto am = minkowski_automean(chev);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> pos(-0.015, 0.015), k(-600.0, 600.0);
  double worst_imag = 0.0;
  for (int n = 0; n < 1000;) {
    const Point3 x(pos(rng), pos(rng), 0);
    if (!am.contains(x)) continue;
    ++n;
    const double w0 = wigner(chev, x, Wavevector()).real();
    const Complex w = wigner(chev, x, Wavevector(k(rng), k(rng), 0));
    worst_imag = std::max(worst_imag, std::abs(w.imag()) / w0);
  }
  const bool a_ok = worst_imag < 1e-8;

  // (b) A(0, 0) is the area.
  const double a00 = ambiguity(chev, Wavevector(), Vec3::Zero()).real();
  const double b_err = std::abs(a00 - chev.area()) / chev.area();
  const bool b_ok = b_err < 1e-9;

  // (c) wavevector integral of W at the centre of the unit square against R_x.
  const auto sq = fixtures::unit_square();
  const PreparedAperture prep(sq);
  const double band = 16.25, h = 0.25;
  const int m = static_cast<int>(std::lround(2 * band / h));
  double integral = 0.0;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      integral += prep.wigner(Point3::Zero(), Wavevector(-band + (i + 0.5) * h, -band + (j + 0.5) * h, 0)).real() * h * h;
  const double rx = marginal_r_x(sq, Point3::Zero());
  const double c_err = std::abs(integral - rx) / rx;
  const bool c_ok = c_err < 0.02;

  // (d) membership equivalence.
  const PolygonSet l({fixtures::l_hexagon()});
  std::uniform_real_distribution<double> px(-0.5, 2.5), lg(-2.5, 2.5);
  int violations = 0;
  for (int i = 0; i < 10000; ++i) {
    const Point3 x(px(rng), px(rng), 0);
    const Vec3 xi(lg(rng), lg(rng), 0);
    const bool point = acf_point(l, x, xi) > 0;
    const bool lag = lag_slice(l, x).region.contains(xi, 1e-12);
    const bool ps = position_slice(l, xi).region.contains(x - l.centroid(), 1e-12);
    violations += (point != lag) || (point != ps);
  }
  const bool d_ok = violations == 0;

  return {a_ok && b_ok && c_ok && d_ok,
          fmt("(a) %s max|Im W|/W(x,0) %.1e; (b) %s A(0,0) rel. error %.1e; (c) %s integral of W over nu %.4f vs R_x "
              "%.4f (error %.1f%%, limit 2%%); (d) %s %d violations in 10000 draws",
              a_ok ? "ok" : "FAIL", worst_imag, b_ok ? "ok" : "FAIL", b_err, c_ok ? "ok" : "FAIL", integral, rx,
              100 * c_err, d_ok ? "ok" : "FAIL", violations)};
}

// 6. Parseval over the band |nu_i| <= 8 / side.
Outcome parseval() {
  const Polygon sq = fixtures::unit_square().parts()[0];
  const double band = 8.0, h = 0.25;
  const int m = static_cast<int>(2 * band / h);
  double sum = 0.0;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) sum += std::norm(sft_polygon(Wavevector(-band + (i + 0.5) * h, -band + (j + 0.5) * h, 0), sq));
  sum *= h * h;
  const double err = std::abs(sum - sq.area()) / sq.area();
  return {err < 0.02, fmt("integral of |F|^2 over |nu_i| <= 8 is %.5f of the area (error %.2f%%, limit 2%%)", sum,
                          100 * err)};
}

// 7. Bit-identical GridField files from identical seed and config.
Outcome determinism() {
  const auto cfg = nlohmann::json::parse(R"({
    "radiators": [[[-0.014, -0.008], [-0.010, -0.008], [-0.004, 0.0], [-0.010, 0.008], [-0.014, 0.008], [-0.008, 0.0]],
                  [[0.002, -0.008], [0.006, -0.008], [0.012, 0.0], [0.006, 0.008], [0.002, 0.008], [0.008, 0.0]]],
    "wavelength_m": 0.00319,
    "sampling": {"seed": 17, "n_samples": 300},
    "output": {"prefix": "det", "heatmap": false}
  })");
  const std::vector<std::string> args{"render", "--plane", "-0.2,-0.2,0.25:0.4,0,0:0,0.4,0:24:24"};
  std::vector<std::string> digests;
  const fs::path base = fs::temp_directory_path() / "pw_acceptance_det";
  fs::remove_all(base);
  for (const char* threads : {"1", "3", "1"}) {
    const fs::path dir = base / (std::string("t") + threads + "_" + std::to_string(digests.size()));
    std::vector<std::string> a{"--threads", threads};
    a.insert(a.end(), args.begin(), args.end());
    std::ostringstream out, err;
    if (pw::cli::run(a, out, err, cfg, dir.string()) != 0) return {false, "render failed: " + err.str()};
    std::ifstream in(dir / "det_render_plane.pgwf", std::ios::binary);
    digests.emplace_back(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
  }
  const bool ok = !digests[0].empty() && digests[0] == digests[1] && digests[1] == digests[2];
  return {ok, fmt("three renders (1, 3, 1 threads) of %zu bytes each: %s", digests[0].size(),
                  ok ? "identical" : "differ")};
}

// 8. Camera and volume renders: lobes and nulls where the analytic pattern has them.
Outcome lobes_and_nulls() {
  const double lam = fixtures::kLambda94GHz;
  const double height = 1.0;
  std::string detail;
  bool ok = true;

  // Camera over a ground plane lit by a downward-facing 10 mm patch.
  {
    std::vector<Point3> v{{-5e-3, -5e-3, height}, {5e-3, -5e-3, height}, {5e-3, 5e-3, height}, {-5e-3, 5e-3, height}};
    const TransmitterScene scene(PolygonSet({validate_polygon(v, Vec3(0, 0, -1)).polygon}), lam);
    PinholeCamera cam;
    cam.position = Point3(0, 0, 2 * height);
    cam.look_at = Point3::Zero();
    cam.up = Vec3::UnitY();
    cam.fov = 60.0 * kPi / 180.0;
    cam.width = 201;
    cam.height = 21;
    RenderOptions opt;
    opt.n_samples = 4000;
    opt.seed = 5;
    const GridField img = render_camera(scene, cam, GroundPlane{}, opt);
    const std::uint32_t row = cam.height / 2, centre = cam.width / 2;
    auto val = [&](int i) { return img.at(img.geometry.flat(i, row)); };
    auto sin_at = [&](int i) {
      const Vec3 d = cam.ray(i, row);
      const Point3 hit = cam.position - cam.position.z() / d.z() * d;
      const Vec3 r = hit - Point3(0, 0, height);
      return r.x() / r.norm();
    };
    double peak = 0.0;
    int peak_i = 0;
    for (std::uint32_t i = 0; i < cam.width; ++i)
      if (val(i) > peak) peak = val(i), peak_i = static_cast<int>(i);
    const double predicted = lam / 10e-3;
    double lobes[2] = {0, 0};
    for (int side = 0; side < 2; ++side) {
      const int dir = side == 0 ? 1 : -1;
      int i = static_cast<int>(centre);
      while (val(i) >= 0.01 * peak) i += dir;
      const int first = i;
      while (val(i) < 0.01 * peak) i += dir;
      const int last = i - dir;
      const double null_s = 0.5 * (sin_at(first) + sin_at(last));
      const double pixel = std::abs(sin_at(first + dir) - sin_at(first));
      for (int k = 0; k < 12; ++k) lobes[side] = std::max(lobes[side], val(i + dir * k) / peak);
      const bool hit = std::abs(std::abs(null_s) - predicted) <= pixel;
      ok = ok && hit;
      detail += fmt("camera null %+.4f (pixel %.4f, predicted %.3f) %s; ", null_s, pixel, predicted, hit ? "ok" : "off");
    }
    const bool main_ok = std::abs(peak_i - static_cast<int>(centre)) <= 1;
    const bool symmetric = lobes[0] > 0.01 && lobes[1] > 0.01 && std::abs(lobes[0] - lobes[1]) < 0.25 * std::max(lobes[0], lobes[1]);
    ok = ok && main_ok && symmetric;
    detail += fmt("side lobes %.4f / %.4f of peak %s; ", lobes[0], lobes[1], symmetric && main_ok ? "ok" : "off");
  }

  // Volume render of the chevron pair against |F|^2 cos(theta) along x.
  {
    const TransmitterScene scene(fixtures::chevron_pair(), lam);
    RenderOptions opt;
    opt.n_samples = 2000;
    opt.seed = 9;
    const std::uint32_t nx = 121;
    const GridField vol = render_volume(scene, Point3(-1.2, -0.1, 1.9), Vec3(2.4, 0, 0), Vec3(0, 0.2, 0),
                                        Vec3(0, 0, 0.2), nx, 3, 3, opt);
    const Point3 c = scene.radiators().centroid();
    int unmatched = 0, strong = 0, missing = 0, lobes = 0;
    for (std::uint32_t k = 0; k < 3; ++k) {
      std::vector<double> rendered(nx), analytic(nx);
      for (std::uint32_t i = 0; i < nx; ++i) {
        const Vec3 r = vol.geometry.node(i, 1, k) - c;
        const double len = r.norm();
        rendered[i] = vol.at(vol.geometry.flat(i, 1, k)) * len * len;
        analytic[i] = std::norm(sft_polygon_set(Wavevector(r / (len * lam)), scene.radiators())) * r.z() / len;
      }
      const double rp = *std::max_element(rendered.begin(), rendered.end());
      const double ap = *std::max_element(analytic.begin(), analytic.end());
      auto maxima = [&](const std::vector<double>& f, double floor) {
        std::vector<int> m;
        for (std::uint32_t i = 1; i + 1 < nx; ++i)
          if (f[i] > f[i - 1] && f[i] >= f[i + 1] && f[i] >= floor) m.push_back(static_cast<int>(i));
        return m;
      };
      auto near = [](const std::vector<int>& set, int i, int tol) {
        for (int j : set)
          if (std::abs(j - i) <= tol) return true;
        return false;
      };
      const auto r_strong = maxima(rendered, 0.10 * rp), a_strong = maxima(analytic, 0.10 * ap);
      const auto r_all = maxima(rendered, 0.0), a_all = maxima(analytic, 0.01 * ap);
      for (int i : r_strong) strong += 1, unmatched += !near(a_strong, i, 1);
      for (int i : a_strong) unmatched += !near(r_strong, i, 1);
      for (int i : a_all) lobes += 1, missing += !near(r_all, i, 2);
    }
    const bool vol_ok = unmatched == 0 && missing == 0 && strong >= 9;
    ok = ok && vol_ok;
    detail += fmt("volume: %d strong maxima, %d unmatched within 1 step, %d of %d analytic lobes missing within 2 steps %s",
                  strong, unmatched, missing, lobes, vol_ok ? "ok" : "off");
  }
  return {ok, detail};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "SFT oracle equivalence", sft_oracle_equivalence},
      {2, "boresight convergence to Kirchhoff", boresight_convergence},
      {3, "Fraunhofer consistency", fraunhofer_consistency},
      {4, "automean correctness", automean_iou},
      {5, "phase-space consistency", phase_space_suite},
      {6, "Parseval power", parseval},
      {7, "determinism", determinism},
      {8, "camera and volume lobes", lobes_and_nulls},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = Clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::printf("criterion %d %s: %s (%.1f s) -- %s\n", c.id, c.name, o.pass ? "PASS" : "FAIL", seconds_since(t0),
                o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
