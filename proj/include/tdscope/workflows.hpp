// SPDX-License-Identifier: Apache-2.0
//
// Copyright 2026 The tdscope Authors
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

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "tdscope/config.hpp"
#include "tdscope/far_field_data.hpp"
#include "tdscope/imaging.hpp"

// Batch workflows behind the command-line front end. Every file written by a
// workflow carries the hash of the configuration that produced it.

namespace tdscope {

namespace fs = std::filesystem;

struct SynthesizeResult {
  std::vector<fs::path> files;
  fs::path manifest;
};

/// One data file per (direction, polarization) plus manifest.json.
SynthesizeResult run_synthesize(const ExperimentConfig& config, const fs::path& out_dir);

struct ImageResult {
  ImageMap map;
  PeakInfo peak;
  bool multi = false;
  fs::path map_csv;
  fs::path summary_json;
  std::vector<fs::path> slices;
  double runtime_seconds = 0.0;
};

/// Images the data listed in data_dir/manifest.json. Throws on a config hash
/// mismatch or a missing data file.
ImageResult run_image(const ExperimentConfig& config, const fs::path& data_dir, const fs::path& out_dir);

struct NoiseStudyResult {
  nlohmann::json report;
  fs::path path;
};

NoiseStudyResult run_noise_study(const ExperimentConfig& config, const fs::path& out_dir);

struct ValidationCheck {
  std::string name;
  double residual = 0.0;
  double tolerance = 0.0;
  bool passed = false;
};

struct ValidationReport {
  std::string config_hash;
  std::vector<ValidationCheck> checks;

  bool passed() const;
  nlohmann::json to_json() const;
};

/// Runs the dual-formula identity checks. Failures are report content, not
/// errors. Writes out_dir/validation.json when out_dir is non-empty.
ValidationReport run_validate(const ExperimentConfig& config, const fs::path& out_dir);

// File formats.

/// Text data file: header (hash, indices, node count, incidence triad), then
/// one row per node: wx wy wz weight Re(E1) Im(E1) Re(E2) Im(E2) Re(E3) Im(E3).
void write_far_field_file(const fs::path& path, const FarFieldData& data,
                          const std::string& hash, int direction_index);

struct LoadedFarField {
  FarFieldData data;
  std::string config_hash;
  int direction_index = 0;
};

/// Reads a data file. When `shared` holds the same nodes and weights it is
/// reused as the data's quadrature.
LoadedFarField read_far_field_file(const fs::path& path,
                                   std::shared_ptr<const SphereQuadrature> shared = nullptr);

/// CSV with header x,y,z,value in grid scan order (x fastest).
void write_map_csv(const fs::path& path, const ImageMap& map);

/// Binary 8-bit PGM (P5), row-major from the first row.
void write_pgm(const fs::path& path, int width, int height, const std::vector<unsigned char>& pixels);

}  // namespace tdscope
