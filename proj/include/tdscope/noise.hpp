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

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "tdscope/em_kernels.hpp"
#include "tdscope/far_field_data.hpp"
#include "tdscope/types.hpp"

namespace tdscope {

/// Mean-zero circular Gaussian measurement noise of magnitude sigma.
struct NoiseModel {
  double sigma = 0.0;
  std::uint64_t seed = 0;

  void validate() const;
};

/// Explicitly seeded random stream. Substreams are derived from the seed and
/// the full substream path, so a trial's draws never depend on which thread
/// runs it.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed);

  RngStream substream(std::uint64_t id) const;
  double normal() { return normal_(engine_); }
  /// Uniform on [0, 1).
  double uniform() { return uniform_(engine_); }

 private:
  explicit RngStream(std::vector<std::uint64_t> path);

  std::vector<std::uint64_t> path_;
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_;
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

/// One tangential complex Gaussian vector per node. The white-noise delta is
/// taken against the normalized measure ds/4pi: at node i the real and
/// imaginary parts of each Cartesian component are N(0, sigma^2 / (2 m_i)),
/// m_i = w_i / 4pi, before projection onto the tangent plane.
std::vector<CVec3> sample_tangential_noise(const NoiseModel& model, const SphereQuadrature& quad,
                                           RngStream& rng);

/// Adds fresh noise to every sample.
FarFieldData corrupt(const FarFieldData& data, const NoiseModel& model, RngStream& rng);

/// Data set k draws from rng.substream(k), so the noise of different
/// measurements is independent.
std::vector<FarFieldData> corrupt(std::span<const FarFieldData> datasets, const NoiseModel& model,
                                  const RngStream& rng);

/// E[H[xi](z) conj(H[xi](z2))^T] = -(4 pi sigma^2 / kappa eps0) Im Gamma(z, z2)
CMat3 herglotz_noise_covariance(const Medium& medium, const NoiseModel& model, const Vec3& z,
                                const Vec3& z2);

/// b_eps^2 sigma^2 kappa^4 / (2n) ||Im Gamma(z, z2)||_F^2 for a spherical
/// trial inclusion. Throws std::invalid_argument otherwise.
double theoretical_covariance(const Medium& medium, const TrialSpec& trial, const NoiseModel& model,
                              int n, const Vec3& z, const Vec3& z2);

double theoretical_variance(const Medium& medium, const TrialSpec& trial, const NoiseModel& model,
                            int n, const Vec3& z);

/// Signal-to-noise ratio at z_D for a spherical true inclusion. Infinite when
/// sigma is zero.
double theoretical_snr(const Medium& medium, const InclusionSpec& inclusion,
                       const NoiseModel& model, int n);

/// Monte-Carlo setup. Covariances at each separation are averaged over a
/// square lattice of base points centred on z_D in the plane orthogonal to
/// `separation_axis`; the noise image is statistically translation
/// invariant, so every base point contributes an independent-ish pair.
struct NoiseStudyConfig {
  Medium medium;
  InclusionSpec inclusion;
  TrialSpec trial = TrialSpec::sphere(3.0, 4.0 * kPi / 3.0);
  int n_directions = 20;
  int quadrature_count = 2000;
  std::vector<double> separations;
  Vec3 separation_axis = Vec3::UnitZ();
  /// Base points per lattice side; 0 uses z_D as the only base point.
  int lattice_side = 0;
  double lattice_spacing = 1.5;
};

struct CovarianceSample {
  double separation = 0.0;
  double empirical = 0.0;
  double theoretical = 0.0;
};

struct NoiseStudyReport {
  int n_directions = 0;
  int trials = 0;
  double clean_value = 0.0;
  double theoretical_mean = 0.0;
  double empirical_mean = 0.0;
  double empirical_variance = 0.0;
  double theoretical_variance = 0.0;
  double empirical_snr = 0.0;
  double theoretical_snr = 0.0;
  std::vector<CovarianceSample> covariance_samples;
};

/// Repeatedly corrupts synthetic data and evaluates td_multi at z_D and at the
/// configured probe pairs. Trial t draws from stream.substream(t).
NoiseStudyReport monte_carlo_image_stats(const NoiseStudyConfig& config, const NoiseModel& model,
                                         int trials, const RngStream& stream);

}  // namespace tdscope
