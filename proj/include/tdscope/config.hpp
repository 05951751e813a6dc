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

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "tdscope/em_kernels.hpp"
#include "tdscope/imaging.hpp"
#include "tdscope/noise.hpp"
#include "tdscope/sphere_math.hpp"

namespace tdscope {

/// Batch configuration. Lengths carry a `_lambda` suffix and are in units of
/// the wavelength; the medium is given by its wavelength (or by kappa, which
/// is converted on parse).
struct ExperimentConfig {
  struct MediumSection {
    double wavelength = 1.0;
    double eps0 = 1.0;
  };
  struct InclusionSection {
    std::array<double, 3> center_lambda{0.234, -0.167, 0.113};
    double rho_lambda = 0.05;
    double eps_r = 3.0;
    double volume_O = 4.0 * kPi / 3.0;
    std::optional<Mat3> polarization;
  };
  struct TrialSection {
    double eps_r = 3.0;
    double volume_O = 4.0 * kPi / 3.0;
    std::optional<Mat3> polarization;
  };
  struct AcquisitionSection {
    /// "multi": n_directions x 2 polarizations; "single": first direction,
    /// first polarization only.
    std::string mode = "multi";
    int n_directions = 20;
    int quadrature_count = 2000;
    QuadratureScheme quadrature_scheme = QuadratureScheme::FibonacciMomentFitted;
    /// Corrupt synthesized data with the noise model.
    bool add_noise = false;
  };
  struct GridSection {
    std::array<double, 3> center_lambda{0.0, 0.0, 0.0};
    double spacing_lambda = 0.1;
    std::array<int, 3> dims{41, 41, 41};
  };
  struct NoiseSection {
    std::optional<double> sigma;
    /// Used to derive sigma from the theoretical SNR when sigma is absent.
    double target_snr = 5.0;
    std::uint64_t seed = 20261018;
    int trials = 500;
    std::vector<double> separations_lambda{0.25, 0.5, 1.0};
    int lattice_side = 20;
    double lattice_spacing_lambda = 1.5;
    /// Variance ratio is checked between n and scaling_factor * n.
    int scaling_factor = 4;
    double variance_tolerance = 0.15;
    double covariance_tolerance = 0.15;
    double scaling_tolerance = 0.20;
    double snr_tolerance = 0.15;
  };
  struct OutputSection {
    bool pgm_slices = true;
  };
  struct ValidationSection {
    int multi_directions = 200;
    int grid_dims = 11;
    double grid_spacing_lambda = 0.1;
    std::uint64_t seed = 7;
  };

  MediumSection medium;
  InclusionSection inclusion;
  TrialSection trial;
  AcquisitionSection acquisition;
  GridSection grid;
  NoiseSection noise;
  OutputSection output;
  ValidationSection validation;

  /// Throws std::invalid_argument with a field-level message.
  void validate() const;

  Medium make_medium() const;
  InclusionSpec make_inclusion() const;
  TrialSpec make_trial() const;
  SearchGrid make_grid() const;
  /// sigma from the config, or derived from target_snr at n_directions.
  NoiseModel make_noise_model() const;
  NoiseStudyConfig make_noise_study(int n_directions) const;

  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&);
};

ExperimentConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const ExperimentConfig& config);

ExperimentConfig load_config(const std::string& path);
void save_config(const ExperimentConfig& config, const std::string& path);

/// FNV-1a 64 of the canonical JSON serialization, as 16 hex digits.
std::string config_hash(const ExperimentConfig& config);

}  // namespace tdscope
