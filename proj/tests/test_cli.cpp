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

#include "polywigner/grid_field.hpp"

#include <doctest.h>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

json square_config() {
  return json::parse(R"({
    "radiators": [[[-0.5, -0.5], [0.5, -0.5], [0.5, 0.5], [-0.5, 0.5]]],
    "wavelength_m": 0.25,
    "illumination": "uniform_unity",
    "sampling": {"seed": 3, "n_samples": 64},
    "output": {"prefix": "sq", "heatmap": true}
  })");
}

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(const std::vector<std::string>& args, const std::optional<json>& cfg, const fs::path& dir) {
  std::ostringstream out, err;
  const int code = pw::cli::run(args, out, err, cfg, dir.string());
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("pw_cli_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::vector<std::string> csv_row(const fs::path& p, int row) {
  std::ifstream in(p);
  std::string line;
  for (int i = 0; i <= row; ++i) std::getline(in, line);
  std::vector<std::string> cells;
  std::stringstream ss(line);
  for (std::string c; std::getline(ss, c, ',');) cells.push_back(c);
  return cells;
}

}  // namespace

TEST_CASE("transform at zero frequency returns the area") {
  const auto dir = scratch("transform");
  const Result r = run({"transform", "--nu", "0,0,0", "--nu", "0.5,0.25,0"}, square_config(), dir);
  REQUIRE(r.code == 0);
  CHECK(csv_row(dir / "sq_transform.csv", 0) == std::vector<std::string>{"nu_x", "nu_y", "nu_z", "re", "im"});
  const auto row = csv_row(dir / "sq_transform.csv", 1);
  REQUIRE(row.size() == 5);
  CHECK(std::stod(row[3]) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(std::stod(csv_row(dir / "sq_transform.csv", 2)[3]) == doctest::Approx(0.5731591682507563).epsilon(1e-14));
  CHECK(fs::exists(dir / "sq_transform.manifest.json"));

  const Result g = run({"transform", "--grid", "-2:2:9"}, square_config(), dir);
  REQUIRE(g.code == 0);
  const auto f = pw::read_grid_field(dir / "sq_transform.pgwf");
  CHECK(f.components == 2);
  CHECK(f.geometry.dims[0] == 9);
  CHECK(f.at(f.geometry.flat(4, 4), 0) == doctest::Approx(1.0));
  CHECK(fs::exists(dir / "sq_transform.ppm"));
}

TEST_CASE("wigner, ambiguity, acf and automean") {
  const auto dir = scratch("functions");
  REQUIRE(run({"wigner", "--x", "0,0,0", "--nu", "0,0,0"}, square_config(), dir).code == 0);
  CHECK(std::stod(csv_row(dir / "sq_wigner.csv", 1)[6]) == doctest::Approx(4.0).epsilon(1e-12));

  REQUIRE(run({"ambiguity", "--upsilon", "0,0,0", "--xi", "0.5,0,0"}, square_config(), dir).code == 0);
  CHECK(std::stod(csv_row(dir / "sq_ambiguity.csv", 1)[6]) == doctest::Approx(0.5).epsilon(1e-12));

  REQUIRE(run({"acf", "--x", "0,0,0", "--xi", "1.2,0,0", "--slice", "0,0,0"}, square_config(), dir).code == 0);
  CHECK(std::stod(csv_row(dir / "sq_acf.csv", 1)[6]) == 0.0);
  CHECK(fs::exists(dir / "sq_acf_slices.csv"));

  REQUIRE(run({"automean"}, square_config(), dir).code == 0);
  std::ifstream in(dir / "sq_automean.csv");
  std::string line;
  int rows = -1;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == 4);  // the convex square echoed back

  REQUIRE(run({"acf", "--project", "--resolution", "8", "--samples", "16"}, square_config(), dir).code == 0);
  int tiles = 0;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.path().extension() == ".pgwf" && e.path().filename().string().find("acf") != std::string::npos) ++tiles;
  CHECK(tiles == 3);

  CHECK(run({"wigner"}, square_config(), dir).code == 2);
}

TEST_CASE("config errors map to exit code 2") {
  const auto dir = scratch("errors");
  json empty = square_config();
  empty["radiators"] = json::array();
  CHECK(run({"transform", "--nu", "0,0,0"}, empty, dir).code == 2);

  json unknown = square_config();
  unknown["sampling"]["bogus"] = 1;
  const Result u = run({"transform", "--nu", "0,0,0"}, unknown, dir);
  CHECK(u.code == 2);
  CHECK(u.err.find("bogus") != std::string::npos);

  json bowtie = square_config();
  bowtie["radiators"] = json::parse("[[[0,0],[1,1],[1,0],[0,1]]]");
  CHECK(run({"transform", "--nu", "0,0,0"}, bowtie, dir).code == 2);

  CHECK(run({"render", "--line", "0,0,1:0,0,2:4", "--samples", "0"}, square_config(), dir).code == 2);
  CHECK(run({"nonsense"}, square_config(), dir).code == 2);
  CHECK(run({"transform", "--nu", "1,2"}, square_config(), dir).code == 2);

  std::ofstream(dir / "broken.json") << "{\n  \"radiators\": [\n  oops\n}";
  try {
    pw::cli::read_json_file(dir / "broken.json");
    FAIL("expected a parse error");
  } catch (const pw::cli::ConfigError& e) {
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
}

TEST_CASE("config parsing") {
  const auto cfg = pw::cli::parse_config(square_config());
  CHECK(cfg.wavelength_m == 0.25);
  CHECK(cfg.seed == 3);
  CHECK(cfg.n_samples == 64);
  CHECK(cfg.radiators.size() == 1);
  CHECK(cfg.radiators[0].normal().z() == doctest::Approx(1.0));

  json down = square_config();
  down["radiators"] = json::parse("[[[-0.5,-0.5,1],[-0.5,0.5,1],[0.5,0.5,1],[0.5,-0.5,1]]]");
  CHECK(pw::cli::parse_config(down).radiators[0].normal().z() == doctest::Approx(-1.0));

  json conv = square_config();
  conv["conventions"] = {{"kernel_sign", 1}, {"slice", "paper_literal"}, {"center_position_slices", false}};
  const auto c2 = pw::cli::parse_config(conv);
  CHECK(c2.conventions.sign == pw::KernelSign::Positive);
  CHECK(c2.conventions.slice == pw::SliceConvention::PaperLiteral);
  conv["conventions"]["kernel_sign"] = 2;
  CHECK_THROWS_AS(pw::cli::parse_config(conv), pw::cli::ConfigError);

  CHECK(pw::cli::config_hash(square_config()) == pw::cli::config_hash(square_config()));
  CHECK(pw::cli::config_hash(square_config()).size() == 64);
}

TEST_CASE("render, validate and rerun reproduce outputs") {
  const auto dir = scratch("render");
  const Result r = run({"render", "--plane", "-1,-1,1:2,0,0:0,2,0:5:4", "--samples", "32"}, square_config(), dir);
  REQUIRE(r.code == 0);
  const fs::path field = dir / "sq_render_plane.pgwf";
  const fs::path manifest = dir / "sq_render.manifest.json";
  REQUIRE(fs::exists(field));
  CHECK(pw::read_grid_field(field).units == "Sigma/m^2");

  const json man = pw::cli::read_json_file(manifest);
  for (const char* key : {"config_sha256", "seed", "version", "conventions", "timings", "outputs"})
    CHECK(man.contains(key));
  CHECK(man["seed"] == 3);

  CHECK(run({"validate", field.string()}, std::nullopt, dir).code == 0);
  CHECK(run({"validate", manifest.string()}, std::nullopt, dir).code == 0);

  const std::string before = slurp(field);
  const auto again = scratch("render_again");
  std::ostringstream out, err;
  REQUIRE(pw::cli::run({"rerun", manifest.string(), "--out-dir", again.string()}, out, err) == 0);
  CHECK(slurp(again / "sq_render_plane.pgwf") == before);

  // Corrupt one byte of the payload: the digest no longer matches.
  std::string bytes = before;
  bytes[bytes.size() - 3] ^= 0x5a;
  std::ofstream(field, std::ios::binary) << bytes;
  CHECK(run({"validate", manifest.string()}, std::nullopt, dir).code == 4);
}

TEST_CASE("render budget and camera") {
  const auto dir = scratch("budget");
  json cfg = square_config();
  CHECK(run({"render", "--volume", "-1,-1,1:2,0,0:0,2,0:0,0,1:1000:1000:1000", "--samples", "100000"}, cfg, dir).code == 3);
  const Result cam = run({"render", "--camera", "0,0,3:0,0,0:0,1,0:60:6:4", "--ground", "0,0,-1:0,0,1", "--samples", "8"},
                         cfg, dir);
  CHECK(cam.code == 0);
}

TEST_CASE("compare writes aligned curves and a convergence summary") {
  const auto dir = scratch("compare");
  json cfg = square_config();
  cfg["radiators"] = json::parse("[[[-0.005,-0.005],[0.005,-0.005],[0.005,0.005],[-0.005,0.005]]]");
  cfg["wavelength_m"] = 3.19e-3;
  const Result r = run({"compare", "--models", "wigner,kirchhoff,fraunhofer", "--boresight", "0.02:0.1:3", "--samples",
                        "2000"},
                       cfg, dir);
  REQUIRE(r.code == 0);
  const auto header = csv_row(dir / "sq_compare.csv", 0);
  CHECK(header.size() == 4);
  const json summary = pw::cli::read_json_file(dir / "sq_compare_summary.json");
  CHECK(summary.contains("wigner_kirchhoff_within_1dB_from"));
}

TEST_CASE("the installed binary reports exit codes") {
  const auto dir = scratch("binary");
  std::ofstream(dir / "cfg.json") << square_config().dump();
  auto status = [&](const std::string& args) {
    const std::string cmd = std::string(POLYWIGNER_BIN) + " " + args + " > " + (dir / "log.txt").string() + " 2>&1";
    const int s = std::system(cmd.c_str());
    return WIFEXITED(s) ? WEXITSTATUS(s) : -1;
  };
  CHECK(status("--version") == 0);
  CHECK(status("wigner -c " + (dir / "cfg.json").string() + " --x 0,0,0 --nu 0,0,0 --out-dir " + dir.string()) == 0);
  CHECK(slurp(dir / "log.txt").find("4") != std::string::npos);
  CHECK(status("transform -c " + (dir / "missing.json").string() + " --nu 0,0,0") != 0);
  CHECK(status("frobnicate") == 2);
}
