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

#include <memory>
#include <span>
#include <vector>

#include "tdscope/far_field_data.hpp"
#include "tdscope/incidence.hpp"
#include "tdscope/sphere_math.hpp"
#include "tdscope/types.hpp"

namespace tdscope {

/// Homogeneous background: wavenumber kappa and permittivity eps0.
struct Medium {
  double kappa = 2.0 * kPi;
  double eps0 = 1.0;

  static Medium from_wavelength(double wavelength, double eps0 = 1.0);
  double wavelength() const { return 2.0 * kPi / kappa; }
  void validate() const;
};

/// Polarization tensor of a sphere, 3 eps_r / (eps_r + 2) |O| I.
Mat3 polarization_tensor_sphere(double eps_r, double volume_O);

/// The true inclusion z_D + rho O_D.
struct InclusionSpec {
  Vec3 center = Vec3::Zero();
  double rho = 0.05;
  double eps_r = 3.0;
  double volume_O = 4.0 * kPi / 3.0;
  Mat3 polarization = Mat3::Identity();

  static InclusionSpec sphere(const Vec3& center, double rho, double eps_r, double volume_O);
  /// True when `polarization` is the sphere tensor for (eps_r, volume_O).
  bool is_sphere() const;
  void validate() const;
};

/// The trial inclusion nucleated at search points. Its scale is eliminated
/// analytically and never stored.
struct TrialSpec {
  double eps_r = 3.0;
  double volume_O = 4.0 * kPi / 3.0;
  Mat3 polarization = Mat3::Identity();

  static TrialSpec sphere(double eps_r, double volume_O);
  bool is_sphere() const;
  void validate() const;
};

/// Two polarizations for each direction, direction-major.
std::vector<Incidence> make_incidences(std::span<const UnitVec3> directions);

/// i kappa (theta x theta_perp) exp(i kappa theta . x)
CVec3 incident_plane_wave(const Medium& medium, const Incidence& inc, const Vec3& x);

/// Full dyadic Green's function -eps0 [I + kappa^-2 grad grad^T] G(|x-y|).
/// Throws std::domain_error when |x - y| < 1e-12 / kappa.
CMat3 green_dyad(const Medium& medium, const Vec3& x, const Vec3& y);

/// Im Gamma(x, y) via spherical Bessel functions; finite at x = y.
Mat3 imag_green_dyad(const Medium& medium, const Vec3& x, const Vec3& y);

/// Leading-order far-field amplitude of the small inclusion. Tangential to xhat.
CVec3 far_field_amplitude(const Medium& medium, const InclusionSpec& inclusion,
                          const Incidence& inc, const UnitVec3& xhat);

/// Samples far_field_amplitude at every quadrature node, one data set per
/// incidence.
std::vector<FarFieldData> synthesize_far_field(const Medium& medium,
                                               const InclusionSpec& inclusion,
                                               std::span<const Incidence> incidences,
                                               std::shared_ptr<const SphereQuadrature> quad);

}  // namespace tdscope
