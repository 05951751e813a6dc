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
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "tdscope/em_kernels.hpp"
#include "tdscope/far_field_data.hpp"
#include "tdscope/types.hpp"

// Reference (definition-level) imaging functionals. Everything here is a
// direct transcription of the single- and multi-measurement topological
// derivative and is kept serial; see image_kernels.hpp for the batched
// OpenMP evaluation used for full grids.
//
// Integrals over S^2 in the imaging functionals are taken against the
// normalized measure ds/4pi, so the Herglotz wave of a constant tangential
// density c is (2/3) c at the origin.

namespace tdscope {

/// Herglotz wave sum_i (w_i/4pi) Phi(x_i) exp(i kappa x_i . z).
/// Throws std::invalid_argument on a sample/node count mismatch.
CVec3 herglotz(std::span<const CVec3> samples, const SphereQuadrature& quad,
               const Medium& medium, const Vec3& z);

/// kappa rho^3 eps0^-1 (eps_r^-1 - 1) Im Gamma(z, z_D) M E0(z_D)
CVec3 herglotz_closed_form(const Medium& medium, const InclusionSpec& inclusion,
                           const Incidence& inc, const Vec3& z);

/// Topological derivative for one incidence, from measured data.
double td_single(const FarFieldData& data, const Medium& medium, const TrialSpec& trial,
                 const Vec3& z_s);

/// Leading-order closed form of td_single for synthetic data.
double td_single_closed_form(const Medium& medium, const InclusionSpec& inclusion,
                             const TrialSpec& trial, const Incidence& inc, const Vec3& z_s);

/// Directions grouped from a multi-incidence data set. Every direction must
/// carry both polarizations exactly once.
struct DirectionGroups {
  std::vector<UnitVec3> directions;
  /// indices[d] = {dataset with pol 1, dataset with pol 2}
  std::vector<std::array<std::size_t, 2>> indices;
};

/// Throws std::invalid_argument on incomplete or duplicated polarization pairs.
DirectionGroups group_by_direction(std::span<const FarFieldData> datasets);

/// (1/n) sum_j sum_l td_single over n directions and both polarizations.
double td_multi(std::span<const FarFieldData> datasets, const Medium& medium,
                const TrialSpec& trial, const Vec3& z_s);

/// rho^3 kappa^4 eps0^-2 C_eps Im Gamma M_rho : M_delta Im Gamma
double td_multi_closed_form(const Medium& medium, const InclusionSpec& inclusion,
                            const TrialSpec& trial, const Vec3& z_s);

/// Rectilinear search grid; point (ix, iy, iz) = origin + spacing * (ix, iy, iz).
struct SearchGrid {
  Vec3 origin = Vec3::Zero();
  double spacing = 0.1;
  std::array<int, 3> dims{1, 1, 1};

  void validate() const;
  std::size_t size() const;
  /// Linear index with x fastest, then y, then z.
  std::size_t linear(int ix, int iy, int iz) const;
  std::array<int, 3> unravel(std::size_t index) const;
  Vec3 point(std::size_t index) const;
  std::vector<Vec3> points() const;

  /// Cube of `dims` points per side whose center is `center`.
  static SearchGrid centered(const Vec3& center, double spacing, int dims);
};

struct PeakInfo {
  Vec3 location = Vec3::Zero();
  std::array<int, 3> index{0, 0, 0};
  double value = 0.0;
  /// Mean over axes of the full width at half maximum through the peak.
  double fwhm = 0.0;
  std::array<double, 3> axis_fwhm{0.0, 0.0, 0.0};
};

struct ImageMap {
  SearchGrid grid;
  std::vector<double> values;
  std::optional<PeakInfo> peak;
};

using Functional = std::function<double(const Vec3&)>;

/// Evaluates `functional` at every grid point in scan order. The functional
/// must be safe to call concurrently.
ImageMap sweep_grid(const SearchGrid& grid, const Functional& functional);

/// First argmax in scan order plus an axis-averaged FWHM by linear
/// interpolation of the half-maximum crossings. Throws std::invalid_argument
/// for a constant map.
PeakInfo locate_peak(const ImageMap& map);

}  // namespace tdscope
