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

#include "cli/config.hpp"

#include <openssl/evp.h>

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace pw::cli {

PhaseSpaceOptions Conventions::phase_space() const {
  PhaseSpaceOptions o;
  o.sign = sign;
  o.slice = slice;
  o.center_position_slices = center_position_slices;
  return o;
}

json Conventions::to_json() const {
  return {{"kernel_sign", static_cast<int>(sign)},
          {"slice", slice == SliceConvention::Consistent ? "consistent" : "paper_literal"},
          {"center_position_slices", center_position_slices}};
}

namespace {

void reject_unknown(const json& obj, const std::string& where, std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) throw ConfigError(where + ": expected an object");
  const std::set<std::string> keys(allowed.begin(), allowed.end());
  for (const auto& [k, v] : obj.items()) {
    if (!keys.count(k)) throw ConfigError(where + ": unknown key '" + k + "'");
  }
}

double number(const json& v, const std::string& where) {
  if (!v.is_number()) throw ConfigError(where + ": expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) throw ConfigError(where + ": must be finite");
  return d;
}

std::uint64_t count(const json& v, const std::string& where) {
  if (!v.is_number_integer() || v.get<long long>() < 0)
    throw ConfigError(where + ": expected a non-negative integer");
  return v.get<std::uint64_t>();
}

Polygon parse_polygon(const json& v, const std::string& where) {
  if (!v.is_array() || v.size() < 3) throw ConfigError(where + ": a polygon needs at least 3 vertices");
  std::vector<Point3> pts;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const auto& p = v[i];
    const std::string w = where + "[" + std::to_string(i) + "]";
    if (!p.is_array() || (p.size() != 2 && p.size() != 3)) throw ConfigError(w + ": vertex must be [x, y] or [x, y, z]");
    pts.emplace_back(number(p[0], w + "[0]"), number(p[1], w + "[1]"), p.size() == 3 ? number(p[2], w + "[2]") : 0.0);
  }
  // The vertex order decides which side radiates (right-hand rule).
  Vec3 newell = Vec3::Zero();
  for (std::size_t i = 0; i < pts.size(); ++i) newell += pts[i].cross(pts[(i + 1) % pts.size()]);
  try {
    if (!(newell.norm() > 0.0)) return validate_polygon(pts).polygon;
    return validate_polygon(pts, newell.normalized()).polygon;
  } catch (const GeometryError& e) {
    throw ConfigError(where + ": " + e.what());
  }
}

}  // namespace

SceneConfig parse_config(const json& doc) {
  reject_unknown(doc, "config",
                 {"radiators", "wavelength_m", "illumination", "sampling", "output", "conventions"});
  SceneConfig c;
  c.source = doc;

  if (!doc.contains("radiators")) throw ConfigError("config.radiators: missing");
  const auto& rads = doc["radiators"];
  if (!rads.is_array()) throw ConfigError("config.radiators: expected an array of polygons");
  if (rads.empty()) throw ConfigError("config.radiators: at least one radiator is required");
  for (std::size_t i = 0; i < rads.size(); ++i)
    c.radiators.push_back(parse_polygon(rads[i], "config.radiators[" + std::to_string(i) + "]"));

  if (!doc.contains("wavelength_m")) throw ConfigError("config.wavelength_m: missing");
  c.wavelength_m = number(doc["wavelength_m"], "config.wavelength_m");
  if (!(c.wavelength_m > 0.0)) throw ConfigError("config.wavelength_m: must be positive");

  if (doc.contains("illumination")) {
    const auto& il = doc["illumination"];
    if (!il.is_string() || il.get<std::string>() != "uniform_unity")
      throw ConfigError("config.illumination: only \"uniform_unity\" is supported");
  }

  if (doc.contains("sampling")) {
    const auto& s = doc["sampling"];
    reject_unknown(s, "config.sampling", {"seed", "n_samples", "quadrature"});
    if (s.contains("seed")) c.seed = count(s["seed"], "config.sampling.seed");
    if (s.contains("n_samples")) c.n_samples = count(s["n_samples"], "config.sampling.n_samples");
    if (s.contains("quadrature")) {
      const auto& q = s["quadrature"];
      reject_unknown(q, "config.sampling.quadrature", {"samples_per_wavelength", "max_points", "order"});
      if (q.contains("samples_per_wavelength"))
        c.quadrature.samples_per_wavelength =
            static_cast<int>(count(q["samples_per_wavelength"], "config.sampling.quadrature.samples_per_wavelength"));
      if (q.contains("max_points"))
        c.quadrature.max_points = count(q["max_points"], "config.sampling.quadrature.max_points");
      if (q.contains("order")) c.quadrature.order = static_cast<int>(count(q["order"], "config.sampling.quadrature.order"));
      try {
        c.quadrature.validate();
      } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("config.sampling.quadrature: ") + e.what());
      }
    }
  }

  if (doc.contains("output")) {
    const auto& o = doc["output"];
    reject_unknown(o, "config.output", {"directory", "prefix", "heatmap"});
    if (o.contains("directory")) {
      if (!o["directory"].is_string()) throw ConfigError("config.output.directory: expected a string");
      c.output.directory = o["directory"].get<std::string>();
    }
    if (o.contains("prefix")) {
      if (!o["prefix"].is_string() || o["prefix"].get<std::string>().empty())
        throw ConfigError("config.output.prefix: expected a non-empty string");
      c.output.prefix = o["prefix"].get<std::string>();
    }
    if (o.contains("heatmap")) {
      if (!o["heatmap"].is_boolean()) throw ConfigError("config.output.heatmap: expected true or false");
      c.output.heatmap = o["heatmap"].get<bool>();
    }
  }

  if (doc.contains("conventions")) {
    const auto& cv = doc["conventions"];
    reject_unknown(cv, "config.conventions", {"kernel_sign", "slice", "center_position_slices"});
    if (cv.contains("kernel_sign")) {
      const auto& k = cv["kernel_sign"];
      if (!k.is_number_integer() || (k.get<int>() != 1 && k.get<int>() != -1))
        throw ConfigError("config.conventions.kernel_sign: must be -1 or 1");
      c.conventions.sign = k.get<int>() < 0 ? KernelSign::Negative : KernelSign::Positive;
    }
    if (cv.contains("slice")) {
      const auto& s = cv["slice"];
      const std::string v = s.is_string() ? s.get<std::string>() : "";
      if (v == "consistent") c.conventions.slice = SliceConvention::Consistent;
      else if (v == "paper_literal") c.conventions.slice = SliceConvention::PaperLiteral;
      else throw ConfigError("config.conventions.slice: must be \"consistent\" or \"paper_literal\"");
    }
    if (cv.contains("center_position_slices")) {
      if (!cv["center_position_slices"].is_boolean())
        throw ConfigError("config.conventions.center_position_slices: expected true or false");
      c.conventions.center_position_slices = cv["center_position_slices"].get<bool>();
    }
  }

  // Catch non-coplanar or overlapping radiators here rather than mid-command.
  (void)c.radiator_set();
  return c;
}

PolygonSet SceneConfig::radiator_set() const {
  try {
    return PolygonSet(radiators);
  } catch (const GeometryError& e) {
    throw ConfigError(std::string("config.radiators: ") + e.what());
  }
}

TransmitterScene SceneConfig::scene() const {
  return TransmitterScene(radiator_set(), wavelength_m, 1.0, conventions.sign);
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

std::string config_hash(const json& doc) {
  const std::string text = doc.dump();  // std::map-backed objects dump with sorted keys
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(text.data(), text.size(), digest, &len, EVP_sha256(), nullptr) != 1)
    throw Error(Error::Category::Io, "SHA-256 computation failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned i = 0; i < len; ++i) {
    out += hex[digest[i] >> 4];
    out += hex[digest[i] & 0xf];
  }
  return out;
}

}  // namespace pw::cli
