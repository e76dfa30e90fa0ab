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

#include "cli/app.hpp"

#include "cli/config.hpp"
#include "cli/output.hpp"
#include "polywigner/oracles.hpp"
#include "polywigner/phase_space.hpp"
#include "polywigner/radiometry.hpp"
#include "polywigner/sampling.hpp"
#include "polywigner/transforms.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ostream>
#include <sstream>

namespace pw::cli {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

double parse_number(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size() || !std::isfinite(v)) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ConfigError(what + ": '" + s + "' is not a finite number");
  }
}

std::uint32_t parse_count(const std::string& s, const std::string& what) {
  const double v = parse_number(s, what);
  if (v < 1 || v != std::floor(v) || v > 1e8) throw ConfigError(what + ": expected a positive integer, got '" + s + "'");
  return static_cast<std::uint32_t>(v);
}

Vec3 parse_vec3(const std::string& s, const std::string& what) {
  const auto parts = split(s, ',');
  if (parts.size() != 3) throw ConfigError(what + ": expected x,y,z, got '" + s + "'");
  return {parse_number(parts[0], what), parse_number(parts[1], what), parse_number(parts[2], what)};
}

std::vector<std::string> fields(const std::string& s, std::size_t n, const std::string& what, const std::string& form) {
  auto parts = split(s, ':');
  if (parts.size() != n) throw ConfigError(what + ": expected " + form + ", got '" + s + "'");
  return parts;
}

struct Common {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> samples;
  std::string out_dir;
  std::string prefix;

  void attach(CLI::App* sub) {
    sub->add_option("-c,--config", config_path, "scene configuration (JSON)");
    sub->add_option("--seed", seed, "override sampling.seed");
    sub->add_option("--samples", samples, "override sampling.n_samples");
    sub->add_option("--out-dir", out_dir, "override output.directory");
    sub->add_option("--prefix", prefix, "override output.prefix");
  }
};

struct Context {
  SceneConfig cfg;
  RunRecord record;
};

Context load(const Common& c, const std::string& command, const std::vector<std::string>& args,
             const std::optional<json>& override_doc, const std::optional<std::string>& dir_override) {
  json doc;
  if (override_doc) {
    doc = *override_doc;
  } else {
    if (c.config_path.empty()) throw ConfigError(command + ": --config is required");
    doc = read_json_file(c.config_path);
  }
  Context ctx{parse_config(doc), {}};
  if (c.seed) ctx.cfg.seed = *c.seed;
  if (c.samples) ctx.cfg.n_samples = *c.samples;
  if (!c.out_dir.empty()) ctx.cfg.output.directory = c.out_dir;
  if (!c.prefix.empty()) ctx.cfg.output.prefix = c.prefix;
  if (dir_override) ctx.cfg.output.directory = *dir_override;
  ctx.record = RunRecord(command, args, ctx.cfg);
  return ctx;
}

Bilinear which_from(const std::string& cmd) {
  if (cmd == "acf") return Bilinear::Acf;
  if (cmd == "ambiguity") return Bilinear::Ambiguity;
  return Bilinear::Wigner;
}

void write_projection(Context& ctx, Bilinear which, std::uint32_t res, double band, std::ostream& out) {
  const auto scene = ctx.cfg.scene();
  ProjectionSpec spec;
  spec.resolution = res;
  spec.n_samples = ctx.cfg.n_samples;
  spec.seed = ctx.cfg.seed;
  spec.band = band;
  const TileSet tiles = project_tiles(scene, which, spec);
  const std::pair<const char*, const Tile*> named[] = {
      {"diag_a", &tiles.first}, {"diag_b", &tiles.second}, {"hybrid", &tiles.hybrid}};
  json stats = json::object();
  for (const auto& [name, tile] : named) {
    const std::string stem = to_string(which) + "_" + name;
    ctx.record.write_field(tile->real, stem);
    if (ctx.cfg.output.heatmap) ctx.record.write_image(tile->real, stem, -40.0, true);
    stats[name] = {{"max_abs_imag", tile->max_imag}, {"min_value", tile->min_value}};
    out << stem << ": max|Im| " << tile->max_imag << ", min " << tile->min_value << '\n';
  }
  ctx.record.extra["projection"] = stats;
}

// ---------------------------------------------------------------- commands

void cmd_transform(Context& ctx, const std::vector<std::string>& nus, const std::string& grid,
                   const std::string& mode, std::ostream& out) {
  const PolygonSet set = ctx.cfg.radiator_set();
  std::vector<Radiator> parts(ctx.cfg.radiators.begin(), ctx.cfg.radiators.end());
  CombineMode cm = CombineMode::Sum;
  if (mode == "directional") cm = CombineMode::Directional;
  else if (mode != "sum") throw ConfigError("--mode: expected sum or directional");
  const KernelSign sign = ctx.cfg.conventions.sign;
  auto eval = [&](const Wavevector& nu) {
    return cm == CombineMode::Sum ? sft_polygon_set(nu, set, sign) : sft_collection(nu, parts, cm, sign);
  };
  if (nus.empty() && grid.empty()) throw ConfigError("transform: give --nu and/or --grid");

  CsvTable table({"nu_x", "nu_y", "nu_z", "re", "im"});
  for (const auto& s : nus) {
    const Wavevector nu(parse_vec3(s, "--nu"));
    const Complex f = eval(nu);
    table.row({nu.x(), nu.y(), nu.z(), f.real(), f.imag()});
  }
  if (!grid.empty()) {
    const auto g = fields(grid, 3, "--grid", "min:max:n");
    const double lo = parse_number(g[0], "--grid"), hi = parse_number(g[1], "--grid");
    const std::uint32_t n = parse_count(g[2], "--grid");
    if (!(hi > lo) && n > 1) throw ConfigError("--grid: max must exceed min");
    const PlaneFrame& f = set.frame();
    const double step = n > 1 ? (hi - lo) / (n - 1) : 0.0;
    GridGeometry geo;
    geo.origin = lo * f.u + lo * f.v;
    geo.axes = {step * f.u, step * f.v, Vec3::Zero()};
    geo.dims = {n, n, 1};
    GridField field(geo, 2, "amplitude*m^2");
    std::vector<Complex> vals(geo.size());
    parallel_for(geo.size(), [&](std::size_t i) { vals[i] = eval(Wavevector(geo.node(i))); });
    for (std::size_t i = 0; i < geo.size(); ++i) {
      field.at(i, 0) = vals[i].real();
      field.at(i, 1) = vals[i].imag();
      const Point3 nu = geo.node(i);
      table.row({nu.x(), nu.y(), nu.z(), vals[i].real(), vals[i].imag()});
    }
    ctx.record.write_field(field, "transform");
    if (ctx.cfg.output.heatmap) ctx.record.write_image(field, "transform", -40.0, true);
  }
  ctx.record.write_csv(table, "transform");
  out << "wrote " << table.size() << " transform values\n";
}

void cmd_point_function(Context& ctx, const std::string& cmd, const std::vector<std::string>& a_list,
                        const std::vector<std::string>& b_list, const char* a_name, const char* b_name,
                        std::ostream& out) {
  const PolygonSet set = ctx.cfg.radiator_set();
  const PhaseSpaceOptions opt = ctx.cfg.conventions.phase_space();
  const std::string an(a_name), bn(b_name);
  CsvTable table({an + "_x", an + "_y", an + "_z", bn + "_x", bn + "_y", bn + "_z", "re", "im"});
  for (const auto& as : a_list) {
    const Vec3 a = parse_vec3(as, "--" + an);
    for (const auto& bs : b_list) {
      const Vec3 b = parse_vec3(bs, "--" + bn);
      Complex v;
      if (cmd == "wigner") v = wigner(set, a, Wavevector(b), opt);
      else if (cmd == "ambiguity") v = ambiguity(set, Wavevector(a), b, opt);
      else v = acf_point(set, a, b);
      table.row({a.x(), a.y(), a.z(), b.x(), b.y(), b.z(), v.real(), v.imag()});
      out << cmd << "(" << as << "; " << bs << ") = " << format_number(v.real());
      if (v.imag() != 0.0) out << (v.imag() < 0 ? " - " : " + ") << format_number(std::abs(v.imag())) << "j";
      out << '\n';
    }
  }
  if (table.size()) ctx.record.write_csv(table, cmd);
}

void cmd_slices(Context& ctx, const std::vector<std::string>& xs, std::ostream& out) {
  const PolygonSet set = ctx.cfg.radiator_set();
  const PhaseSpaceOptions opt = ctx.cfg.conventions.phase_space();
  CsvTable table({"slice", "piece", "vertex", "x", "y", "z"});
  for (std::size_t s = 0; s < xs.size(); ++s) {
    const auto res = lag_slice(set, parse_vec3(xs[s], "--slice"), opt);
    out << "lag slice at " << xs[s] << ": area " << format_number(res.region.area()) << '\n';
    for (std::size_t p = 0; p < res.region.parts().size(); ++p) {
      const auto& v = res.region.parts()[p].vertices();
      for (std::size_t i = 0; i < v.size(); ++i)
        table.row({double(s), double(p), double(i), v[i].x(), v[i].y(), v[i].z()});
    }
  }
  ctx.record.write_csv(table, "acf_slices");
}

void cmd_automean(Context& ctx, std::ostream& out) {
  const PolygonSet am = minkowski_automean(ctx.cfg.radiator_set());
  CsvTable table({"piece", "vertex", "x", "y", "z"});
  for (std::size_t p = 0; p < am.parts().size(); ++p) {
    const auto& v = am.parts()[p].vertices();
    for (std::size_t i = 0; i < v.size(); ++i) table.row({double(p), double(i), v[i].x(), v[i].y(), v[i].z()});
  }
  ctx.record.write_csv(table, "automean");
  ctx.record.extra["automean_area_m2"] = am.area();
  out << "automean: " << am.parts().size() << " convex piece(s), area " << format_number(am.area()) << " m^2\n";
}

RenderOptions render_options(const Context& ctx, bool vector) {
  RenderOptions o;
  o.n_samples = ctx.cfg.n_samples;
  o.seed = ctx.cfg.seed;
  o.vector = vector;
  if (o.n_samples < 1) throw ConfigError("render: n_samples must be at least 1");
  return o;
}

void cmd_render(Context& ctx, const std::string& line, const std::string& plane, const std::string& volume,
                const std::string& camera, const std::string& ground, bool vector, std::ostream& out) {
  const int chosen = !line.empty() + !plane.empty() + !volume.empty() + !camera.empty();
  if (chosen != 1) throw ConfigError("render: choose exactly one of --line, --plane, --volume, --camera");
  const RenderOptions opt = render_options(ctx, vector);
  const TransmitterScene scene = ctx.cfg.scene();
  GridField field;
  std::string stem;
  if (!line.empty()) {
    const auto f = fields(line, 3, "--line", "start:end:n");
    field = render_line(scene, parse_vec3(f[0], "--line"), parse_vec3(f[1], "--line"), parse_count(f[2], "--line"), opt);
    stem = "render_line";
  } else if (!plane.empty()) {
    const auto f = fields(plane, 5, "--plane", "origin:extent_u:extent_v:nu:nv");
    field = render_plane(scene, parse_vec3(f[0], "--plane"), parse_vec3(f[1], "--plane"), parse_vec3(f[2], "--plane"),
                         parse_count(f[3], "--plane"), parse_count(f[4], "--plane"), opt);
    stem = "render_plane";
  } else if (!volume.empty()) {
    const auto f = fields(volume, 7, "--volume", "origin:extent_u:extent_v:extent_w:nu:nv:nw");
    field = render_volume(scene, parse_vec3(f[0], "--volume"), parse_vec3(f[1], "--volume"),
                          parse_vec3(f[2], "--volume"), parse_vec3(f[3], "--volume"), parse_count(f[4], "--volume"),
                          parse_count(f[5], "--volume"), parse_count(f[6], "--volume"), opt);
    stem = "render_volume";
  } else {
    const auto f = fields(camera, 6, "--camera", "position:look_at:up:fov_deg:width:height");
    PinholeCamera cam;
    cam.position = parse_vec3(f[0], "--camera");
    cam.look_at = parse_vec3(f[1], "--camera");
    cam.up = parse_vec3(f[2], "--camera");
    cam.fov = parse_number(f[3], "--camera") * kPi / 180.0;
    cam.width = parse_count(f[4], "--camera");
    cam.height = parse_count(f[5], "--camera");
    try {
      cam.validate();
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("--camera: ") + e.what());
    }
    GroundPlane g;
    if (!ground.empty()) {
      const auto gf = fields(ground, 2, "--ground", "point:normal");
      g.point = parse_vec3(gf[0], "--ground");
      g.normal = parse_vec3(gf[1], "--ground");
      if (!(g.normal.norm() > 0.0)) throw ConfigError("--ground: normal must be nonzero");
    }
    field = render_camera(scene, cam, g, opt);
    stem = "render_camera";
    ctx.record.extra["camera"] = {{"ground_albedo", 1.0}, {"bounces", 1}};
  }
  ctx.record.write_field(field, stem);
  if (ctx.cfg.output.heatmap && field.geometry.dims[2] == 1 && field.geometry.rank() == 2)
    ctx.record.write_image(field, stem, -40.0, false);
  out << stem << ": " << field.geometry.size() << " nodes, " << opt.n_samples << " samples/node\n";
}

void cmd_compare(Context& ctx, const std::string& models_arg, const std::string& boresight,
                 const std::string& angles, double range, std::ostream& out) {
  std::vector<std::string> models = split(models_arg, ',');
  for (const auto& m : models)
    if (m != "wigner" && m != "kirchhoff" && m != "fraunhofer") throw ConfigError("--models: unknown model '" + m + "'");
  if (boresight.empty() == angles.empty()) throw ConfigError("compare: choose one of --boresight or --angles");

  const TransmitterScene scene = ctx.cfg.scene();
  const PolygonSet& set = scene.radiators();
  const PlaneFrame& f = set.frame();
  const Point3 c = set.centroid();
  const double lam = scene.wavelength();

  std::vector<double> coord;
  std::vector<Point3> pts;
  std::string coord_name;
  if (!boresight.empty()) {
    const auto b = fields(boresight, 3, "--boresight", "z0:z1:n");
    const double z0 = parse_number(b[0], "--boresight"), z1 = parse_number(b[1], "--boresight");
    const std::uint32_t n = parse_count(b[2], "--boresight");
    if (!(z0 > 0.0) || !(z1 >= z0)) throw ConfigError("--boresight: need 0 < z0 <= z1");
    for (std::uint32_t i = 0; i < n; ++i) {
      const double z = n > 1 ? z0 + (z1 - z0) * i / (n - 1) : z0;
      coord.push_back(z);
      pts.push_back(c + z * f.normal);
    }
    coord_name = "distance_m";
  } else {
    const auto a = fields(angles, 3, "--angles", "deg0:deg1:n");
    const double a0 = parse_number(a[0], "--angles"), a1 = parse_number(a[1], "--angles");
    const std::uint32_t n = parse_count(a[2], "--angles");
    if (!(range > 0.0)) throw ConfigError("--range must be positive with --angles");
    for (std::uint32_t i = 0; i < n; ++i) {
      const double deg = n > 1 ? a0 + (a1 - a0) * i / (n - 1) : a0;
      const double t = deg * kPi / 180.0;
      if (std::abs(t) >= 0.5 * kPi) throw ConfigError("--angles: must stay inside (-90, 90) degrees");
      coord.push_back(deg);
      pts.push_back(c + range * (std::cos(t) * f.normal + std::sin(t) * f.u));
    }
    coord_name = "angle_deg";
  }

  const std::size_t n = pts.size();
  std::vector<std::vector<double>> cols(models.size(), std::vector<double>(n, 0.0));
  const RenderOptions opt = render_options(ctx, false);
  const bool wants_wigner = std::find(models.begin(), models.end(), "wigner") != models.end();
  if (wants_wigner && double(n) * double(opt.n_samples) > opt.max_evaluations)
    throw BudgetExceeded("compare: " + std::to_string(n) + " points x " + std::to_string(opt.n_samples) +
                         " samples exceeds the evaluation budget");
  for (std::size_t m = 0; m < models.size(); ++m) {
    if (models[m] == "wigner") {
      parallel_for(n, [&](std::size_t i) {
        auto rng = stream_rng(opt.seed, i);
        cols[m][i] = transport_flux(scene, pts[i], opt.n_samples, rng).value.norm();
      });
    } else if (models[m] == "kirchhoff") {
      parallel_for(n, [&](std::size_t i) { cols[m][i] = std::norm(kirchhoff_field(set, pts[i], lam, ctx.cfg.quadrature)); });
    } else {
      for (std::size_t i = 0; i < n; ++i) {
        const Vec3 r = pts[i] - c;
        const double len = r.norm(), cos_t = f.normal.dot(r) / len;
        cols[m][i] = std::norm(sft_polygon_set(Wavevector(r / (len * lam)), set, ctx.cfg.conventions.sign)) *
                     cos_t * cos_t / (lam * lam * len * len);
      }
    }
  }

  std::vector<std::string> header{coord_name};
  for (const auto& m : models) header.push_back(m);
  CsvTable table(header);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> row{coord[i]};
    for (const auto& col : cols) row.push_back(col[i]);
    table.row(row);
  }
  ctx.record.write_csv(table, "compare");

  json summary = {{"models", models}, {"coordinate", coord_name}};
  const auto wi = std::find(models.begin(), models.end(), "wigner") - models.begin();
  const auto ki = std::find(models.begin(), models.end(), "kirchhoff") - models.begin();
  if (wi < static_cast<long>(models.size()) && ki < static_cast<long>(models.size())) {
    // Smallest coordinate beyond which every point agrees within 1 dB.
    std::optional<double> converged;
    double worst = 0.0;
    for (std::size_t i = n; i-- > 0;) {
      const double w = cols[wi][i], k = cols[ki][i];
      const double db = (w > 0 && k > 0) ? std::abs(10.0 * std::log10(w / k)) : INFINITY;
      if (db >= 1.0) break;
      converged = coord[i];
      worst = std::max(worst, db);
    }
    summary["wigner_kirchhoff_within_1dB_from"] = converged ? json(*converged) : json(nullptr);
    summary["max_abs_db_in_converged_range"] = worst;
    if (converged) out << "Wigner within 1 dB of Kirchhoff from " << coord_name << " = " << format_number(*converged)
                      << " (" << format_number(*converged / lam) << " wavelengths)\n";
    else out << "Wigner and Kirchhoff differ by >= 1 dB at the last point\n";
  }
  ctx.record.extra["compare"] = summary;
  ctx.record.write_json(summary, "compare_summary");
}

// ---------------------------------------------------------------- dispatch

int exit_code_for(const Error& e) {
  switch (e.category()) {
    case Error::Category::Config:
    case Error::Category::Geometry: return kConfig;
    case Error::Category::Budget: return kBudget;
    case Error::Category::Numerical: return kNumerical;
    case Error::Category::Io: return kOther;
  }
  return kOther;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        const std::optional<json>& config_override, const std::optional<std::string>& output_dir_override) {
  CLI::App app{"polywigner: phase-space transforms and diffraction rendering of polygonal apertures"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);
  std::optional<unsigned> threads;
  app.add_option("--threads", threads, "worker threads (default: POLYWIGNER_THREADS or all cores)");

  Common common;
  std::vector<std::string> nus, xs, xis, ups, slices;
  std::string grid, mode = "sum", line, plane, volume, camera, ground, models = "wigner,kirchhoff,fraunhofer";
  std::string boresight, angles, target, manifest_path, rerun_dir;
  double range = 0.0, band = 0.0;
  std::uint32_t resolution = 32;
  bool project = false, vector = false;

  auto* t = app.add_subcommand("transform", "Stokes Fourier transform at wavevectors (CSV nu_x,nu_y,nu_z,re,im)");
  common.attach(t);
  t->add_option("--nu", nus, "wavevector x,y,z in 1/m (repeatable)");
  t->add_option("--grid", grid, "square grid min:max:n over the aperture-plane axes");
  t->add_option("--mode", mode, "sum | directional");

  auto* w = app.add_subcommand("wigner", "Wigner function values or projection tiles");
  common.attach(w);
  w->add_option("--x", xs, "position x,y,z (repeatable)");
  w->add_option("--nu", nus, "wavevector x,y,z (repeatable)");

  auto* a = app.add_subcommand("ambiguity", "Ambiguity function values or projection tiles");
  common.attach(a);
  a->add_option("--upsilon", ups, "wavevector shift x,y,z (repeatable)");
  a->add_option("--xi", xis, "lag x,y,z (repeatable)");

  auto* c = app.add_subcommand("acf", "Autocorrelation values, lag slices or projection tiles");
  common.attach(c);
  c->add_option("--x", xs, "position x,y,z (repeatable)");
  c->add_option("--xi", xis, "lag x,y,z (repeatable)");
  c->add_option("--slice", slices, "write the lag slice polygon at position x,y,z (repeatable)");

  for (auto* sub : {w, a, c}) {
    sub->add_flag("--project", project, "write the three 2D projection tiles");
    sub->add_option("--resolution", resolution, "tile resolution (pixels per side)");
    sub->add_option("--band", band, "half-width of wavevector axes, 1/m (0 = automatic)");
  }

  auto* m = app.add_subcommand("automean", "Minkowski automean polygons (CSV)");
  common.attach(m);

  auto* r = app.add_subcommand("render", "Monte-Carlo flux render to a PGWF grid");
  common.attach(r);
  r->add_option("--line", line, "start:end:n");
  r->add_option("--plane", plane, "origin:extent_u:extent_v:nu:nv");
  r->add_option("--volume", volume, "origin:extent_u:extent_v:extent_w:nu:nv:nw");
  r->add_option("--camera", camera, "position:look_at:up:fov_deg:width:height");
  r->add_option("--ground", ground, "ground plane point:normal for --camera (default 0,0,0:0,0,1)");
  r->add_flag("--vector", vector, "store flux vectors instead of magnitudes");

  auto* cmp = app.add_subcommand("compare", "Wigner vs Kirchhoff vs Fraunhofer flux (CSV + summary)");
  common.attach(cmp);
  cmp->add_option("--models", models, "comma-separated subset of wigner,kirchhoff,fraunhofer");
  cmp->add_option("--boresight", boresight, "distance sweep z0:z1:n along the aperture normal");
  cmp->add_option("--angles", angles, "angle sweep deg0:deg1:n in the (normal, u) plane");
  cmp->add_option("--range", range, "distance for --angles, m");

  auto* v = app.add_subcommand("validate", "Re-check a manifest and its outputs, or a single PGWF file");
  v->add_option("target", target, "manifest (.json) or grid field (.pgwf)")->required();

  auto* rr = app.add_subcommand("rerun", "Re-execute the run recorded in a manifest");
  rr->add_option("manifest", manifest_path, "manifest written by an earlier run")->required();
  rr->add_option("--out-dir", rerun_dir, "write outputs here instead of the recorded directory");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kConfig;
  }

  try {
    if (threads) {
      set_thread_count(*threads);
    } else if (const char* env = std::getenv("POLYWIGNER_THREADS")) {
      set_thread_count(static_cast<unsigned>(std::max(0L, std::strtol(env, nullptr, 10))));
    }

    if (v->parsed()) {
      const ValidationReport rep = validate_target(target);
      for (const auto& line_msg : rep.messages) out << line_msg << '\n';
      out << (rep.ok ? "valid" : "INVALID") << '\n';
      return rep.ok ? kOk : kNumerical;
    }
    if (rr->parsed()) {
      const json man = read_json_file(manifest_path);
      if (!man.contains("args") || !man.contains("config")) throw ConfigError(manifest_path + ": not a run manifest");
      std::optional<std::string> dir;
      if (!rerun_dir.empty()) dir = rerun_dir;
      else dir = (std::filesystem::path(manifest_path).parent_path() / "").string();
      return run(man["args"].get<std::vector<std::string>>(), out, err, man["config"], dir);
    }

    CLI::App* sub = app.get_subcommands().front();
    const std::string cmd = sub->get_name();
    Context ctx = load(common, cmd, args, config_override, output_dir_override);
    const auto t0 = std::chrono::steady_clock::now();

    if (cmd == "transform") {
      cmd_transform(ctx, nus, grid, mode, out);
    } else if (cmd == "wigner" || cmd == "ambiguity" || cmd == "acf") {
      bool did = false;
      if (project) {
        write_projection(ctx, which_from(cmd), resolution, band, out);
        did = true;
      }
      if (cmd == "acf" && !slices.empty()) {
        cmd_slices(ctx, slices, out);
        did = true;
      }
      const auto& la = cmd == "ambiguity" ? ups : xs;
      const auto& lb = cmd == "wigner" ? nus : xis;
      if (!la.empty() && !lb.empty()) {
        cmd_point_function(ctx, cmd, la, lb, cmd == "ambiguity" ? "upsilon" : "x", cmd == "wigner" ? "nu" : "xi", out);
        did = true;
      }
      if (!did) throw ConfigError(cmd + ": nothing to evaluate (give points, --slice or --project)");
    } else if (cmd == "automean") {
      cmd_automean(ctx, out);
    } else if (cmd == "render") {
      cmd_render(ctx, line, plane, volume, camera, ground, vector, out);
    } else if (cmd == "compare") {
      cmd_compare(ctx, models, boresight, angles, range, out);
    }

    ctx.record.timings["compute_s"] =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    ctx.record.timings["threads"] = thread_count();
    const auto manifest = ctx.record.write_manifest();
    out << "manifest: " << manifest.string() << '\n';
    return kOk;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kConfig;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kOther;
  }
}

}  // namespace pw::cli
