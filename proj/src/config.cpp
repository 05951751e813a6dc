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

#include "tdscope/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace tdscope {

using nlohmann::json;

namespace {

[[noreturn]] void field_error(const std::string& field, const std::string& message) {
  throw std::invalid_argument("config: " + field + " " + message);
}

void reject_unknown(const json& section, const std::string& name, std::set<std::string> known) {
  if (!section.is_object()) field_error(name, "must be an object");
  for (const auto& item : section.items()) {
    if (!known.count(item.key())) field_error(name + "." + item.key(), "is not a known field");
  }
}

template <typename T>
void read(const json& section, const std::string& prefix, const char* key, T& out) {
  if (!section.contains(key)) return;
  try {
    out = section.at(key).get<T>();
  } catch (const json::exception& e) {
    field_error(prefix + "." + key, std::string("has the wrong type (") + e.what() + ")");
  }
}

std::optional<Mat3> read_matrix(const json& section, const std::string& prefix, const char* key) {
  if (!section.contains(key) || section.at(key).is_null()) return std::nullopt;
  std::array<std::array<double, 3>, 3> rows{};
  read(section, prefix, key, rows);
  Mat3 m;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) m(r, c) = rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
  return m;
}

json write_matrix(const std::optional<Mat3>& m) {
  if (!m) return nullptr;
  json rows = json::array();
  for (int r = 0; r < 3; ++r) rows.push_back({(*m)(r, 0), (*m)(r, 1), (*m)(r, 2)});
  return rows;
}

void require_positive(double v, const std::string& field) {
  if (!(v > 0.0) || !std::isfinite(v)) field_error(field, "must be positive and finite");
}

Vec3 to_vec(const std::array<double, 3>& a) { return Vec3(a[0], a[1], a[2]); }

}  // namespace

ExperimentConfig config_from_json(const json& j) {
  ExperimentConfig c;
  reject_unknown(j, "config", {"medium", "inclusion", "trial", "acquisition", "grid", "noise", "output", "validation"});
  if (j.contains("medium")) {
    const auto& s = j.at("medium");
    reject_unknown(s, "medium", {"wavelength", "kappa", "eps0"});
    if (s.contains("wavelength") && s.contains("kappa")) {
      field_error("medium", "must give either wavelength or kappa, not both");
    }
    read(s, "medium", "wavelength", c.medium.wavelength);
    if (s.contains("kappa")) {
      double kappa = 0.0;
      read(s, "medium", "kappa", kappa);
      require_positive(kappa, "medium.kappa");
      c.medium.wavelength = 2.0 * kPi / kappa;
    }
    read(s, "medium", "eps0", c.medium.eps0);
  }
  if (j.contains("inclusion")) {
    const auto& s = j.at("inclusion");
    reject_unknown(s, "inclusion", {"center_lambda", "rho_lambda", "eps_r", "volume_O", "polarization"});
    read(s, "inclusion", "center_lambda", c.inclusion.center_lambda);
    read(s, "inclusion", "rho_lambda", c.inclusion.rho_lambda);
    read(s, "inclusion", "eps_r", c.inclusion.eps_r);
    read(s, "inclusion", "volume_O", c.inclusion.volume_O);
    c.inclusion.polarization = read_matrix(s, "inclusion", "polarization");
  }
  if (j.contains("trial")) {
    const auto& s = j.at("trial");
    reject_unknown(s, "trial", {"eps_r", "volume_O", "polarization"});
    read(s, "trial", "eps_r", c.trial.eps_r);
    read(s, "trial", "volume_O", c.trial.volume_O);
    c.trial.polarization = read_matrix(s, "trial", "polarization");
  }
  if (j.contains("acquisition")) {
    const auto& s = j.at("acquisition");
    reject_unknown(s, "acquisition", {"mode", "n_directions", "quadrature_count", "quadrature_scheme", "add_noise"});
    read(s, "acquisition", "mode", c.acquisition.mode);
    read(s, "acquisition", "n_directions", c.acquisition.n_directions);
    read(s, "acquisition", "quadrature_count", c.acquisition.quadrature_count);
    if (s.contains("quadrature_scheme")) {
      std::string scheme;
      read(s, "acquisition", "quadrature_scheme", scheme);
      try {
        c.acquisition.quadrature_scheme = quadrature_scheme_from_string(scheme);
      } catch (const std::invalid_argument&) {
        field_error("acquisition.quadrature_scheme", "must be fibonacci_equal or fibonacci_moment_fitted");
      }
    }
    read(s, "acquisition", "add_noise", c.acquisition.add_noise);
  }
  if (j.contains("grid")) {
    const auto& s = j.at("grid");
    reject_unknown(s, "grid", {"center_lambda", "spacing_lambda", "dims"});
    read(s, "grid", "center_lambda", c.grid.center_lambda);
    read(s, "grid", "spacing_lambda", c.grid.spacing_lambda);
    read(s, "grid", "dims", c.grid.dims);
  }
  if (j.contains("noise")) {
    const auto& s = j.at("noise");
    reject_unknown(s, "noise", {"sigma", "target_snr", "seed", "trials", "separations_lambda", "lattice_side",
                                "lattice_spacing_lambda", "scaling_factor", "variance_tolerance",
                                "covariance_tolerance", "scaling_tolerance", "snr_tolerance"});
    if (s.contains("sigma") && !s.at("sigma").is_null()) {
      double sigma = 0.0;
      read(s, "noise", "sigma", sigma);
      c.noise.sigma = sigma;
    }
    read(s, "noise", "target_snr", c.noise.target_snr);
    read(s, "noise", "seed", c.noise.seed);
    read(s, "noise", "trials", c.noise.trials);
    read(s, "noise", "separations_lambda", c.noise.separations_lambda);
    read(s, "noise", "lattice_side", c.noise.lattice_side);
    read(s, "noise", "lattice_spacing_lambda", c.noise.lattice_spacing_lambda);
    read(s, "noise", "scaling_factor", c.noise.scaling_factor);
    read(s, "noise", "variance_tolerance", c.noise.variance_tolerance);
    read(s, "noise", "covariance_tolerance", c.noise.covariance_tolerance);
    read(s, "noise", "scaling_tolerance", c.noise.scaling_tolerance);
    read(s, "noise", "snr_tolerance", c.noise.snr_tolerance);
  }
  if (j.contains("output")) {
    const auto& s = j.at("output");
    reject_unknown(s, "output", {"pgm_slices"});
    read(s, "output", "pgm_slices", c.output.pgm_slices);
  }
  if (j.contains("validation")) {
    const auto& s = j.at("validation");
    reject_unknown(s, "validation", {"multi_directions", "grid_dims", "grid_spacing_lambda", "seed"});
    read(s, "validation", "multi_directions", c.validation.multi_directions);
    read(s, "validation", "grid_dims", c.validation.grid_dims);
    read(s, "validation", "grid_spacing_lambda", c.validation.grid_spacing_lambda);
    read(s, "validation", "seed", c.validation.seed);
  }
  c.validate();
  return c;
}

json config_to_json(const ExperimentConfig& c) {
  json j;
  j["medium"] = {{"wavelength", c.medium.wavelength}, {"eps0", c.medium.eps0}};
  j["inclusion"] = {{"center_lambda", c.inclusion.center_lambda},
                    {"rho_lambda", c.inclusion.rho_lambda},
                    {"eps_r", c.inclusion.eps_r},
                    {"volume_O", c.inclusion.volume_O},
                    {"polarization", write_matrix(c.inclusion.polarization)}};
  j["trial"] = {{"eps_r", c.trial.eps_r},
                {"volume_O", c.trial.volume_O},
                {"polarization", write_matrix(c.trial.polarization)}};
  j["acquisition"] = {{"mode", c.acquisition.mode},
                      {"n_directions", c.acquisition.n_directions},
                      {"quadrature_count", c.acquisition.quadrature_count},
                      {"quadrature_scheme", std::string(to_string(c.acquisition.quadrature_scheme))},
                      {"add_noise", c.acquisition.add_noise}};
  j["grid"] = {{"center_lambda", c.grid.center_lambda},
               {"spacing_lambda", c.grid.spacing_lambda},
               {"dims", c.grid.dims}};
  j["noise"] = {{"sigma", c.noise.sigma ? json(*c.noise.sigma) : json(nullptr)},
                {"target_snr", c.noise.target_snr},
                {"seed", c.noise.seed},
                {"trials", c.noise.trials},
                {"separations_lambda", c.noise.separations_lambda},
                {"lattice_side", c.noise.lattice_side},
                {"lattice_spacing_lambda", c.noise.lattice_spacing_lambda},
                {"scaling_factor", c.noise.scaling_factor},
                {"variance_tolerance", c.noise.variance_tolerance},
                {"covariance_tolerance", c.noise.covariance_tolerance},
                {"scaling_tolerance", c.noise.scaling_tolerance},
                {"snr_tolerance", c.noise.snr_tolerance}};
  j["output"] = {{"pgm_slices", c.output.pgm_slices}};
  j["validation"] = {{"multi_directions", c.validation.multi_directions},
                     {"grid_dims", c.validation.grid_dims},
                     {"grid_spacing_lambda", c.validation.grid_spacing_lambda},
                     {"seed", c.validation.seed}};
  return j;
}

void ExperimentConfig::validate() const {
  require_positive(medium.wavelength, "medium.wavelength");
  require_positive(medium.eps0, "medium.eps0");
  for (double v : inclusion.center_lambda) {
    if (!std::isfinite(v)) field_error("inclusion.center_lambda", "must be finite");
  }
  require_positive(inclusion.rho_lambda, "inclusion.rho_lambda");
  require_positive(inclusion.eps_r, "inclusion.eps_r");
  require_positive(inclusion.volume_O, "inclusion.volume_O");
  require_positive(trial.eps_r, "trial.eps_r");
  require_positive(trial.volume_O, "trial.volume_O");
  try {
    make_inclusion().validate();
    make_trial().validate();
  } catch (const std::invalid_argument& e) {
    field_error("polarization", e.what());
  }
  if (acquisition.mode != "multi" && acquisition.mode != "single") {
    field_error("acquisition.mode", "must be \"multi\" or \"single\"");
  }
  if (acquisition.n_directions < 1) field_error("acquisition.n_directions", "must be >= 1");
  if (acquisition.quadrature_count < 6) field_error("acquisition.quadrature_count", "must be >= 6");
  require_positive(grid.spacing_lambda, "grid.spacing_lambda");
  for (int d : grid.dims) {
    if (d < 1) field_error("grid.dims", "entries must be >= 1");
  }
  const int widest = std::max({grid.dims[0], grid.dims[1], grid.dims[2]});
  if (grid.spacing_lambda * (widest - 1) < 1.0) {
    field_error("grid", "must span at least one wavelength along some axis");
  }
  if (noise.sigma && (!(*noise.sigma >= 0.0) || !std::isfinite(*noise.sigma))) {
    field_error("noise.sigma", "must be finite and >= 0");
  }
  require_positive(noise.target_snr, "noise.target_snr");
  if (noise.trials < 2) field_error("noise.trials", "must be >= 2");
  for (double s : noise.separations_lambda) {
    if (!(s > 0.0) || !std::isfinite(s)) field_error("noise.separations_lambda", "entries must be positive");
  }
  if (noise.lattice_side < 0) field_error("noise.lattice_side", "must be >= 0");
  require_positive(noise.lattice_spacing_lambda, "noise.lattice_spacing_lambda");
  if (noise.scaling_factor < 2) field_error("noise.scaling_factor", "must be >= 2");
  require_positive(noise.variance_tolerance, "noise.variance_tolerance");
  require_positive(noise.covariance_tolerance, "noise.covariance_tolerance");
  require_positive(noise.scaling_tolerance, "noise.scaling_tolerance");
  require_positive(noise.snr_tolerance, "noise.snr_tolerance");
  if (validation.multi_directions < 1) field_error("validation.multi_directions", "must be >= 1");
  if (validation.grid_dims < 2) field_error("validation.grid_dims", "must be >= 2");
  require_positive(validation.grid_spacing_lambda, "validation.grid_spacing_lambda");
}

Medium ExperimentConfig::make_medium() const {
  return Medium::from_wavelength(medium.wavelength, medium.eps0);
}

InclusionSpec ExperimentConfig::make_inclusion() const {
  const double lambda = medium.wavelength;
  InclusionSpec spec = InclusionSpec::sphere(lambda * to_vec(inclusion.center_lambda),
                                             lambda * inclusion.rho_lambda, inclusion.eps_r,
                                             inclusion.volume_O);
  if (inclusion.polarization) spec.polarization = *inclusion.polarization;
  return spec;
}

TrialSpec ExperimentConfig::make_trial() const {
  TrialSpec spec = TrialSpec::sphere(trial.eps_r, trial.volume_O);
  if (trial.polarization) spec.polarization = *trial.polarization;
  return spec;
}

SearchGrid ExperimentConfig::make_grid() const {
  const double lambda = medium.wavelength;
  const double h = lambda * grid.spacing_lambda;
  const Vec3 half = 0.5 * h * Vec3(grid.dims[0] - 1, grid.dims[1] - 1, grid.dims[2] - 1);
  return SearchGrid{lambda * to_vec(grid.center_lambda) - half, h, grid.dims};
}

NoiseModel ExperimentConfig::make_noise_model() const {
  if (noise.sigma) return NoiseModel{*noise.sigma, noise.seed};
  const double unit_snr = theoretical_snr(make_medium(), make_inclusion(), NoiseModel{1.0, noise.seed},
                                          acquisition.n_directions);
  return NoiseModel{unit_snr / noise.target_snr, noise.seed};
}

NoiseStudyConfig ExperimentConfig::make_noise_study(int n_directions) const {
  NoiseStudyConfig study;
  study.medium = make_medium();
  study.inclusion = make_inclusion();
  study.trial = make_trial();
  study.n_directions = n_directions;
  study.quadrature_count = acquisition.quadrature_count;
  for (double s : noise.separations_lambda) study.separations.push_back(s * medium.wavelength);
  study.separation_axis = Vec3::UnitZ();
  study.lattice_side = noise.lattice_side;
  study.lattice_spacing = noise.lattice_spacing_lambda * medium.wavelength;
  return study;
}

bool operator==(const ExperimentConfig& a, const ExperimentConfig& b) {
  return config_to_json(a) == config_to_json(b);
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw std::invalid_argument("config: " + path + " is not valid JSON: " + e.what());
  }
  return config_from_json(j);
}

void save_config(const ExperimentConfig& config, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write config file '" + path + "'");
  out << config_to_json(config).dump(2) << '\n';
}

std::string config_hash(const ExperimentConfig& config) {
  const std::string text = config_to_json(config).dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace tdscope
