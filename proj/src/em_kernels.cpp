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

#include "tdscope/em_kernels.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace tdscope {

namespace {

void require_positive(double value, const char* what) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw std::invalid_argument(std::string(what) + " must be positive and finite");
  }
}

void validate_polarization(const Mat3& m, const char* owner) {
  if (!m.allFinite()) {
    throw std::invalid_argument(std::string(owner) + ": polarization tensor is not finite");
  }
  const double scale = m.norm();
  if ((m - m.transpose()).norm() > 1e-12 * scale) {
    throw std::invalid_argument(std::string(owner) + ": polarization tensor must be symmetric");
  }
  Eigen::SelfAdjointEigenSolver<Mat3> eig(m, Eigen::EigenvaluesOnly);
  if (!(eig.eigenvalues().minCoeff() > 0.0)) {
    throw std::invalid_argument(std::string(owner) + ": polarization tensor must be positive definite");
  }
}

bool matches_sphere(const Mat3& m, double eps_r, double volume_O) {
  const Mat3 sphere = polarization_tensor_sphere(eps_r, volume_O);
  return (m - sphere).norm() <= 1e-12 * sphere.norm();
}

}  // namespace

Medium Medium::from_wavelength(double wavelength, double eps0) {
  require_positive(wavelength, "wavelength");
  return Medium{2.0 * kPi / wavelength, eps0};
}

void Medium::validate() const {
  require_positive(kappa, "medium.kappa");
  require_positive(eps0, "medium.eps0");
}

Mat3 polarization_tensor_sphere(double eps_r, double volume_O) {
  require_positive(eps_r, "eps_r");
  require_positive(volume_O, "volume_O");
  return (3.0 * eps_r / (eps_r + 2.0) * volume_O) * Mat3::Identity();
}

InclusionSpec InclusionSpec::sphere(const Vec3& center, double rho, double eps_r, double volume_O) {
  return InclusionSpec{center, rho, eps_r, volume_O, polarization_tensor_sphere(eps_r, volume_O)};
}

bool InclusionSpec::is_sphere() const { return matches_sphere(polarization, eps_r, volume_O); }

void InclusionSpec::validate() const {
  if (!center.allFinite()) throw std::invalid_argument("inclusion.center must be finite");
  require_positive(rho, "inclusion.rho");
  require_positive(eps_r, "inclusion.eps_r");
  require_positive(volume_O, "inclusion.volume_O");
  validate_polarization(polarization, "inclusion");
}

TrialSpec TrialSpec::sphere(double eps_r, double volume_O) {
  return TrialSpec{eps_r, volume_O, polarization_tensor_sphere(eps_r, volume_O)};
}

bool TrialSpec::is_sphere() const { return matches_sphere(polarization, eps_r, volume_O); }

void TrialSpec::validate() const {
  require_positive(eps_r, "trial.eps_r");
  require_positive(volume_O, "trial.volume_O");
  validate_polarization(polarization, "trial");
}

std::vector<Incidence> make_incidences(std::span<const UnitVec3> directions) {
  std::vector<Incidence> out;
  out.reserve(2 * directions.size());
  for (const auto& theta : directions) {
    const Triad triad = orthonormal_triad(theta);
    out.push_back(Incidence{triad, 1});
    out.push_back(Incidence{triad, 2});
  }
  return out;
}

CVec3 incident_plane_wave(const Medium& medium, const Incidence& inc, const Vec3& x) {
  const cdouble phase = std::exp(cdouble(0.0, medium.kappa * inc.direction().dot(x)));
  return (cdouble(0.0, medium.kappa) * phase) * inc.field_axis().cast<cdouble>();
}

CMat3 green_dyad(const Medium& medium, const Vec3& x, const Vec3& y) {
  const Vec3 d = x - y;
  const double r = d.norm();
  const double k = medium.kappa;
  if (r < 1e-12 / k) {
    throw std::domain_error("green_dyad: x and y coincide");
  }
  const Vec3 rhat = d / r;
  const double kr = k * r;
  const cdouble g = std::exp(cdouble(0.0, kr)) / (kFourPi * r);
  const cdouble i_kr = cdouble(0.0, 1.0 / kr);
  const double inv_kr2 = 1.0 / (kr * kr);
  // G [(1 + i/kr - 1/kr^2) I + (-1 - 3i/kr + 3/kr^2) rhat rhat^T]
  const cdouble iso = 1.0 + i_kr - inv_kr2;
  const cdouble aniso = -1.0 - 3.0 * i_kr + 3.0 * inv_kr2;
  const CMat3 shape = iso * CMat3::Identity() + aniso * (rhat * rhat.transpose()).cast<cdouble>();
  return (-medium.eps0 * g) * shape;
}

Mat3 imag_green_dyad(const Medium& medium, const Vec3& x, const Vec3& y) {
  const Vec3 d = x - y;
  const double r = d.norm();
  const double kr = medium.kappa * r;
  const double j0 = spherical_bessel_j(0, kr);
  const double j2 = spherical_bessel_j(2, kr);
  Mat3 out = (2.0 / 3.0 * j0 - j2 / 3.0) * Mat3::Identity();
  if (r > 0.0) {
    const Vec3 rhat = d / r;
    out += j2 * (rhat * rhat.transpose());
  }
  return (-medium.eps0 * medium.kappa / kFourPi) * out;
}

CVec3 far_field_amplitude(const Medium& medium, const InclusionSpec& inclusion,
                          const Incidence& inc, const UnitVec3& xhat) {
  const double k = medium.kappa;
  const double rho3 = inclusion.rho * inclusion.rho * inclusion.rho;
  const double prefactor = -(k * k * rho3 / kFourPi) * (1.0 / inclusion.eps_r - 1.0);
  const Vec3& xh = xhat.vec();
  const CVec3 induced = inclusion.polarization.cast<cdouble>() *
                        incident_plane_wave(medium, inc, inclusion.center);
  const CVec3 tangential = induced - xh.cast<cdouble>() * bilinear_dot(xh.cast<cdouble>(), induced);
  const cdouble phase = std::exp(cdouble(0.0, -k * xh.dot(inclusion.center)));
  return (prefactor * phase) * tangential;
}

std::vector<FarFieldData> synthesize_far_field(const Medium& medium,
                                               const InclusionSpec& inclusion,
                                               std::span<const Incidence> incidences,
                                               std::shared_ptr<const SphereQuadrature> quad) {
  if (incidences.empty()) {
    throw std::invalid_argument("synthesize_far_field: no incidences");
  }
  if (!quad) throw std::invalid_argument("synthesize_far_field: null quadrature");
  medium.validate();
  inclusion.validate();
  std::vector<FarFieldData> out(incidences.size());
  const auto& nodes = quad->nodes();
  const auto total = static_cast<std::ptrdiff_t>(incidences.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t k = 0; k < total; ++k) {
    FarFieldData data;
    data.incidence = incidences[static_cast<std::size_t>(k)];
    data.quad = quad;
    data.samples.reserve(nodes.size());
    for (const auto& xhat : nodes) {
      data.samples.push_back(far_field_amplitude(medium, inclusion, data.incidence, xhat));
    }
    out[static_cast<std::size_t>(k)] = std::move(data);
  }
  return out;
}

}  // namespace tdscope
