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

#include "cli/output.hpp"

#include "cli/app.hpp"

#include <openssl/evp.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <memory>
#include <sstream>

namespace pw::cli {

std::string format_number(double v) {
  char buf[40];
  for (int prec = 1; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, v);
    if (std::strtod(buf, nullptr) == v) return buf;
  }
  return buf;
}

void CsvTable::row(const std::vector<double>& values) {
  if (values.size() != header_.size()) throw std::logic_error("csv row width does not match header");
  rows_.push_back(values);
}

std::string CsvTable::str() const {
  std::string s;
  for (std::size_t i = 0; i < header_.size(); ++i) s += (i ? "," : "") + header_[i];
  s += '\n';
  for (const auto& r : rows_) {
    for (std::size_t i = 0; i < r.size(); ++i) s += (i ? "," : "") + format_number(r[i]);
    s += '\n';
  }
  return s;
}

std::string file_sha256(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Error::Category::Io, "cannot read " + path.string());
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1)
    throw Error(Error::Category::Io, "SHA-256 unavailable");
  char buf[1 << 16];
  while (in.read(buf, sizeof buf) || in.gcount() > 0) EVP_DigestUpdate(ctx.get(), buf, static_cast<std::size_t>(in.gcount()));
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx.get(), digest, &len);
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned i = 0; i < len; ++i) {
    out += hex[digest[i] >> 4];
    out += hex[digest[i] & 0xf];
  }
  return out;
}

RunRecord::RunRecord(std::string command, std::vector<std::string> args, const SceneConfig& cfg)
    : command_(std::move(command)),
      args_(std::move(args)),
      config_(cfg.source),
      config_sha_(config_hash(cfg.source)),
      seed_(cfg.seed),
      n_samples_(cfg.n_samples),
      conventions_(cfg.conventions.to_json()),
      dir_(cfg.output.directory),
      prefix_(cfg.output.prefix) {}

std::filesystem::path RunRecord::path_for(const std::string& stem, const std::string& ext) {
  std::error_code ec;
  std::filesystem::create_directories(dir_, ec);
  if (ec) throw Error(Error::Category::Io, "cannot create " + dir_.string() + ": " + ec.message());
  return dir_ / (prefix_ + "_" + stem + ext);
}

void RunRecord::add(const std::filesystem::path& p, const std::string& kind, const std::string& units) {
  outputs_.push_back({{"file", p.filename().string()}, {"kind", kind}, {"units", units}, {"sha256", file_sha256(p)}});
}

std::filesystem::path RunRecord::write_field(const GridField& field, const std::string& stem) {
  const auto p = path_for(stem, ".pgwf");
  write_grid_field(field, p);
  add(p, "pgwf", field.units);
  return p;
}

std::filesystem::path RunRecord::write_image(const GridField& field, const std::string& stem, double floor_db,
                                             bool symmetric) {
  const auto p = path_for(stem, symmetric ? ".ppm" : ".pgm");
  write_heatmap(field, p, floor_db, symmetric);
  add(p, symmetric ? "ppm" : "pgm", symmetric ? "symlog-dB" : "dB");
  return p;
}

std::filesystem::path RunRecord::write_csv(const CsvTable& table, const std::string& stem) {
  const auto p = path_for(stem, ".csv");
  std::ofstream out(p, std::ios::binary);
  out << table.str();
  if (!out) throw Error(Error::Category::Io, "failed to write " + p.string());
  out.close();
  add(p, "csv", "SI");
  return p;
}

std::filesystem::path RunRecord::write_json(const json& doc, const std::string& stem) {
  const auto p = path_for(stem, ".json");
  std::ofstream out(p, std::ios::binary);
  out << doc.dump(2) << '\n';
  if (!out) throw Error(Error::Category::Io, "failed to write " + p.string());
  out.close();
  add(p, "json", "SI");
  return p;
}

std::filesystem::path RunRecord::write_manifest() const {
  json m;
  m["tool"] = "polywigner";
  m["version"] = kVersion;
  m["command"] = command_;
  m["args"] = args_;
  m["config"] = config_;
  m["config_sha256"] = config_sha_;
  m["seed"] = seed_;
  m["n_samples"] = n_samples_;
  m["conventions"] = conventions_;
  m["measures"] = {
      {"wavevector", "shell |nu| = 1/lambda, dnu = dOmega / lambda^2, front hemisphere"},
      {"transport_area", "automean area (Monte-Carlo measure)"},
      {"flux_vector_area", "aperture area"},
      {"back_face", "max(0, n.r) clamp"},
      {"kirchhoff_kernel", "Rayleigh-Sommerfeld first kind, cos(theta) obliquity"},
  };
  m["outputs"] = outputs_;
  m["timings"] = timings;
  if (!extra.empty()) m["results"] = extra;
  std::error_code ec;
  std::filesystem::create_directories(dir_, ec);
  const auto p = dir_ / (prefix_ + "_" + command_ + ".manifest.json");
  std::ofstream out(p, std::ios::binary);
  out << m.dump(2) << '\n';
  if (!out) throw Error(Error::Category::Io, "failed to write " + p.string());
  return p;
}

namespace {

void check_field(const std::filesystem::path& p, const std::string* expect_units, ValidationReport& rep) {
  auto fail = [&](const std::string& msg) {
    rep.ok = false;
    rep.messages.push_back(p.filename().string() + ": " + msg);
  };
  GridField f;
  try {
    f = read_grid_field(p);
  } catch (const std::exception& e) {
    fail(e.what());
    return;
  }
  if (f.units.empty()) fail("missing units tag");
  if (expect_units && f.units != *expect_units) fail("units '" + f.units + "' differ from manifest '" + *expect_units + "'");
  std::size_t bad = 0;
  for (double x : f.values) bad += !std::isfinite(x);
  if (bad) fail(std::to_string(bad) + " non-finite values");
  if (rep.ok) {
    rep.messages.push_back(p.filename().string() + ": " + std::to_string(f.geometry.dims[0]) + "x" +
                           std::to_string(f.geometry.dims[1]) + "x" + std::to_string(f.geometry.dims[2]) + ", " +
                           std::to_string(f.components) + " component(s), units " + f.units);
  }
}

}  // namespace

ValidationReport validate_target(const std::filesystem::path& target) {
  ValidationReport rep;
  if (target.extension() == ".pgwf") {
    check_field(target, nullptr, rep);
    return rep;
  }
  const json m = read_json_file(target);
  auto fail = [&](const std::string& msg) {
    rep.ok = false;
    rep.messages.push_back(msg);
  };
  for (const char* key : {"config", "config_sha256", "outputs", "conventions", "seed", "version"})
    if (!m.contains(key)) fail(std::string("manifest lacks '") + key + "'");
  if (!rep.ok) return rep;
  if (config_hash(m["config"]) != m["config_sha256"].get<std::string>()) fail("config hash mismatch");
  try {
    const SceneConfig cfg = parse_config(m["config"]);
    if (cfg.conventions.to_json() != m["conventions"]) fail("convention flags differ from the embedded config");
  } catch (const std::exception& e) {
    fail(std::string("embedded config invalid: ") + e.what());
  }
  const auto dir = target.parent_path();
  for (const auto& o : m["outputs"]) {
    const auto p = dir / o["file"].get<std::string>();
    if (!std::filesystem::exists(p)) {
      fail(p.filename().string() + ": missing");
      continue;
    }
    if (file_sha256(p) != o["sha256"].get<std::string>()) fail(p.filename().string() + ": digest mismatch");
    if (o["kind"] == "pgwf") {
      const std::string units = o["units"].get<std::string>();
      check_field(p, &units, rep);
    }
  }
  return rep;
}

}  // namespace pw::cli
