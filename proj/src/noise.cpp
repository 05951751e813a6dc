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

#include "tdscope/noise.hpp"

#include <cmath>
#include <limits>
#include <memory>
#include <stdexcept>

#include "tdscope/image_kernels.hpp"
#include "tdscope/imaging.hpp"

namespace tdscope {

namespace {

std::mt19937_64 seeded_engine(const std::vector<std::uint64_t>& path) {
  std::vector<std::uint32_t> words;
  words.reserve(2 * path.size());
  for (auto v : path) {
    words.push_back(static_cast<std::uint32_t>(v));
    words.push_back(static_cast<std::uint32_t>(v >> 32));
  }
  std::seed_seq seq(words.begin(), words.end());
  return std::mt19937_64(seq);
}

double frobenius_sq(const Mat3& m) { return m.squaredNorm(); }

void require_sphere_trial(const TrialSpec& trial) {
  if (!trial.is_sphere()) {
    throw std::invalid_argument("noise statistics require a spherical trial inclusion");
  }
}

}  // namespace

void NoiseModel::validate() const {
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) {
    throw std::invalid_argument("noise.sigma must be finite and >= 0");
  }
}

RngStream::RngStream(std::uint64_t seed) : RngStream(std::vector<std::uint64_t>{seed}) {}

RngStream::RngStream(std::vector<std::uint64_t> path)
    : path_(std::move(path)), engine_(seeded_engine(path_)) {}

RngStream RngStream::substream(std::uint64_t id) const {
  auto path = path_;
  path.push_back(id);
  return RngStream(std::move(path));
}

std::vector<CVec3> sample_tangential_noise(const NoiseModel& model, const SphereQuadrature& quad,
                                           RngStream& rng) {
  model.validate();
  std::vector<CVec3> out(quad.count(), CVec3::Zero());
  if (model.sigma == 0.0) return out;
  const auto& nodes = quad.nodes();
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double sd = model.sigma / std::sqrt(2.0 * quad.mean_weight(i));
    CVec3 g;
    for (int c = 0; c < 3; ++c) {
      const double re = rng.normal();
      const double im = rng.normal();
      g(c) = sd * cdouble(re, im);
    }
    const CVec3 x = nodes[i].vec().cast<cdouble>();
    out[i] = g - x * bilinear_dot(x, g);
  }
  return out;
}

FarFieldData corrupt(const FarFieldData& data, const NoiseModel& model, RngStream& rng) {
  if (!data.quad) throw std::invalid_argument("corrupt: data has no quadrature");
  const auto noise = sample_tangential_noise(model, *data.quad, rng);
  FarFieldData out = data;
  for (std::size_t i = 0; i < out.samples.size(); ++i) out.samples[i] += noise[i];
  out.corrupted = true;
  return out;
}

std::vector<FarFieldData> corrupt(std::span<const FarFieldData> datasets, const NoiseModel& model,
                                  const RngStream& rng) {
  std::vector<FarFieldData> out;
  out.reserve(datasets.size());
  for (std::size_t k = 0; k < datasets.size(); ++k) {
    RngStream sub = rng.substream(k);
    out.push_back(corrupt(datasets[k], model, sub));
  }
  return out;
}

CMat3 herglotz_noise_covariance(const Medium& medium, const NoiseModel& model, const Vec3& z,
                                const Vec3& z2) {
  const double factor = -kFourPi * model.sigma * model.sigma / (medium.kappa * medium.eps0);
  return (factor * imag_green_dyad(medium, z, z2)).cast<cdouble>();
}

double theoretical_covariance(const Medium& medium, const TrialSpec& trial, const NoiseModel& model,
                              int n, const Vec3& z, const Vec3& z2) {
  require_sphere_trial(trial);
  if (n < 1) throw std::invalid_argument("theoretical_covariance: n must be >= 1");
  const double k = medium.kappa;
  const double contrast = 1.0 / trial.eps_r - 1.0;
  // a_eps = (kappa^2 / 4pi)(eps2^-1 - 1) is the prefactor of each single
  // measurement functional; with M_delta = m_delta I it folds into
  // b_eps = (4pi / kappa^2) a_eps m_delta / eps0.
  const double a_eps = k * k / kFourPi * contrast;
  const double m_delta = 3.0 * trial.volume_O / (2.0 / trial.eps_r + 1.0);
  const double b_eps = kFourPi / (k * k) * a_eps * m_delta / medium.eps0;
  const double sigma2 = model.sigma * model.sigma;
  return b_eps * b_eps * sigma2 * k * k * k * k / (2.0 * n) *
         frobenius_sq(imag_green_dyad(medium, z, z2));
}

double theoretical_variance(const Medium& medium, const TrialSpec& trial, const NoiseModel& model,
                            int n, const Vec3& z) {
  return theoretical_covariance(medium, trial, model, n, z, z);
}

double theoretical_snr(const Medium& medium, const InclusionSpec& inclusion,
                       const NoiseModel& model, int n) {
  if (!inclusion.is_sphere()) {
    throw std::invalid_argument("theoretical_snr: requires a spherical inclusion");
  }
  if (n < 1) throw std::invalid_argument("theoretical_snr: n must be >= 1");
  model.validate();
  const double k = medium.kappa;
  const double inv_eps = 1.0 / inclusion.eps_r;
  const double rho3 = inclusion.rho * inclusion.rho * inclusion.rho;
  const double im_gamma_norm = medium.eps0 * k / (6.0 * kPi) * std::sqrt(3.0);
  const double numerator = 3.0 * std::sqrt(2.0 * n) * std::abs(inv_eps - 1.0) * rho3 *
                           inclusion.volume_O * k * k * im_gamma_norm;
  if (numerator == 0.0) return 0.0;
  if (model.sigma == 0.0) return std::numeric_limits<double>::infinity();
  return numerator / (model.sigma * medium.eps0 * std::abs(2.0 * inv_eps + 1.0));
}

NoiseStudyReport monte_carlo_image_stats(const NoiseStudyConfig& config, const NoiseModel& model,
                                         int trials, const RngStream& stream) {
  if (trials < 2) throw std::invalid_argument("monte_carlo_image_stats: trials must be >= 2");
  if (config.n_directions < 1) throw std::invalid_argument("monte_carlo_image_stats: n_directions must be >= 1");
  config.medium.validate();
  config.inclusion.validate();
  config.trial.validate();
  model.validate();

  auto quad = std::make_shared<const SphereQuadrature>(build_quadrature(config.quadrature_count));
  const auto directions = fibonacci_directions(config.n_directions);
  const auto incidences = make_incidences(directions);
  const auto clean = synthesize_far_field(config.medium, config.inclusion, incidences, quad);
  const Vec3& z_d = config.inclusion.center;

  // Probe layout: z_D first, then for every base point the base itself
  // followed by base + s * axis for each separation s.
  const UnitVec3 axis(config.separation_axis);
  std::vector<Vec3> bases;
  if (config.lattice_side <= 0) {
    bases.push_back(z_d);
  } else {
    const Triad t = orthonormal_triad(axis);
    const double half = 0.5 * (config.lattice_side - 1);
    for (int a = 0; a < config.lattice_side; ++a) {
      for (int b = 0; b < config.lattice_side; ++b) {
        bases.push_back(z_d + config.lattice_spacing * ((a - half) * t.perp1.vec() + (b - half) * t.perp2.vec()));
      }
    }
  }
  const std::size_t per_base = 1 + config.separations.size();
  std::vector<Vec3> points{z_d};
  for (const auto& base : bases) {
    points.push_back(base);
    for (double s : config.separations) points.push_back(base + s * axis.vec());
  }

  const ProbeBank bank(*quad, directions, config.medium, points);
  const std::size_t p = points.size();
  std::vector<double> samples(static_cast<std::size_t>(trials) * p);

  NoiseStudyReport report;
  report.n_directions = config.n_directions;
  report.trials = trials;
  {
    const TopologicalResponse response(clean, config.medium, config.trial);
    std::vector<double> clean_values(p);
    bank.evaluate(response, clean_values);
    report.clean_value = clean_values.front();
  }

#pragma omp parallel for schedule(dynamic, 1)
  for (int t = 0; t < trials; ++t) {
    const auto noisy = corrupt(clean, model, stream.substream(static_cast<std::uint64_t>(t)));
    const TopologicalResponse response(noisy, config.medium, config.trial);
    bank.evaluate(response, std::span<double>(samples).subspan(static_cast<std::size_t>(t) * p, p));
  }

  // Reductions run serially in trial order. Means are accumulated as shifts
  // from the first trial, so identical samples reduce exactly.
  std::vector<double> mean(p, 0.0);
  for (int t = 1; t < trials; ++t) {
    for (std::size_t j = 0; j < p; ++j) mean[j] += samples[static_cast<std::size_t>(t) * p + j] - samples[j];
  }
  for (std::size_t j = 0; j < p; ++j) mean[j] = samples[j] + mean[j] / trials;
  auto covariance = [&](std::size_t a, std::size_t b) {
    double acc = 0.0;
    for (int t = 0; t < trials; ++t) {
      const double* row = &samples[static_cast<std::size_t>(t) * p];
      acc += (row[a] - mean[a]) * (row[b] - mean[b]);
    }
    return acc / (trials - 1);
  };

  report.empirical_mean = mean.front();
  report.empirical_variance = covariance(0, 0);
  report.theoretical_mean = td_multi_closed_form(config.medium, config.inclusion, config.trial, z_d);
  report.theoretical_variance =
      theoretical_variance(config.medium, config.trial, model, config.n_directions, z_d);
  report.empirical_snr = report.empirical_variance > 0.0
                             ? report.empirical_mean / std::sqrt(report.empirical_variance)
                             : std::numeric_limits<double>::infinity();
  report.theoretical_snr = theoretical_snr(config.medium, config.inclusion, model, config.n_directions);

  for (std::size_t s = 0; s < config.separations.size(); ++s) {
    double acc = 0.0;
    for (std::size_t b = 0; b < bases.size(); ++b) {
      const std::size_t base_index = 1 + b * per_base;
      acc += covariance(base_index, base_index + 1 + s);
    }
    const double sep = config.separations[s];
    report.covariance_samples.push_back(CovarianceSample{
        sep, acc / static_cast<double>(bases.size()),
        theoretical_covariance(config.medium, config.trial, model, config.n_directions, z_d,
                               z_d + sep * axis.vec())});
  }
  return report;
}

}  // namespace tdscope
