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

// Output writers and run manifests for the command line front end.

#pragma once

#include "cli/config.hpp"
#include "polywigner/grid_field.hpp"

#include <filesystem>
#include <initializer_list>
#include <string>
#include <vector>

namespace pw::cli {

/// Shortest text that parses back to the same double.
std::string format_number(double v);

class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}
  void row(const std::vector<double>& values);
  std::size_t size() const { return rows_.size(); }
  std::string str() const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<double>> rows_;
};

std::string file_sha256(const std::filesystem::path& path);

/// Collects the outputs of one command and writes its manifest.
class RunRecord {
 public:
  RunRecord() = default;
  RunRecord(std::string command, std::vector<std::string> args, const SceneConfig& cfg);

  std::filesystem::path write_field(const GridField& field, const std::string& stem);
  std::filesystem::path write_image(const GridField& field, const std::string& stem, double floor_db, bool symmetric);
  std::filesystem::path write_csv(const CsvTable& table, const std::string& stem);
  std::filesystem::path write_json(const json& doc, const std::string& stem);
  std::filesystem::path write_manifest() const;

  json extra = json::object();
  json timings = json::object();

 private:
  std::filesystem::path path_for(const std::string& stem, const std::string& ext);
  void add(const std::filesystem::path& p, const std::string& kind, const std::string& units);

  std::string command_;
  std::vector<std::string> args_;
  json config_;
  std::string config_sha_;
  std::uint64_t seed_ = 0;
  std::size_t n_samples_ = 0;
  json conventions_;
  std::filesystem::path dir_;
  std::string prefix_;
  json outputs_ = json::array();
};

struct ValidationReport {
  bool ok = true;
  std::vector<std::string> messages;
};

/// Checks a manifest (config hash, every listed output's digest, PGWF
/// structure and units) or a lone PGWF file.
ValidationReport validate_target(const std::filesystem::path& target);

}  // namespace pw::cli
