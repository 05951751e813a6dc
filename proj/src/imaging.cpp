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

#include "tdscope/imaging.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>

namespace tdscope {

namespace {

double trial_contrast(const TrialSpec& trial) { return 1.0 / trial.eps_r - 1.0; }

}  // namespace

CVec3 herglotz(std::span<const CVec3> samples, const SphereQuadrature& quad,
               const Medium& medium, const Vec3& z) {
  if (samples.size() != quad.count()) {
    throw std::invalid_argument("herglotz: " + std::to_string(samples.size()) +
                                " samples for " + std::to_string(quad.count()) + " nodes");
  }
  const auto& nodes = quad.nodes();
  CVec3 sum = CVec3::Zero();
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const cdouble phase = std::exp(cdouble(0.0, medium.kappa * nodes[i].dot(z)));
    sum += (quad.mean_weight(i) * phase) * samples[i];
  }
  return sum;
}

CVec3 herglotz_closed_form(const Medium& medium, const InclusionSpec& inclusion,
                           const Incidence& inc, const Vec3& z) {
  const double rho3 = inclusion.rho * inclusion.rho * inclusion.rho;
  const double prefactor = medium.kappa * rho3 / medium.eps0 * (1.0 / inclusion.eps_r - 1.0);
  const Mat3 im_gamma = imag_green_dyad(medium, z, inclusion.center);
  const CVec3 induced = inclusion.polarization.cast<cdouble>() *
                        incident_plane_wave(medium, inc, inclusion.center);
  return prefactor * (im_gamma.cast<cdouble>() * induced);
}

double td_single(const FarFieldData& data, const Medium& medium, const TrialSpec& trial,
                 const Vec3& z_s) {
  if (!data.quad) throw std::invalid_argument("td_single: data has no quadrature");
  const double k = medium.kappa;
  const CVec3 h = herglotz(data.samples, *data.quad, medium, z_s);
  const CVec3 probe = trial.polarization.cast<cdouble>() * incident_plane_wave(medium, data.incidence, z_s);
  return -(k * k / kFourPi) * trial_contrast(trial) * bilinear_dot(h.conjugate(), probe).real();
}

double td_single_closed_form(const Medium& medium, const InclusionSpec& inclusion,
                             const TrialSpec& trial, const Incidence& inc, const Vec3& z_s) {
  const double k = medium.kappa;
  const double rho3 = inclusion.rho * inclusion.rho * inclusion.rho;
  const double c_eps = (1.0 / inclusion.eps_r - 1.0) * trial_contrast(trial);
  const Mat3 im_gamma = imag_green_dyad(medium, z_s, inclusion.center);
  const CVec3 back = (im_gamma * inclusion.polarization).cast<cdouble>() *
                     incident_plane_wave(medium, inc, inclusion.center).conjugate();
  const CVec3 probe = trial.polarization.cast<cdouble>() * incident_plane_wave(medium, inc, z_s);
  return -(rho3 * k * k * k * c_eps / (kFourPi * medium.eps0)) * bilinear_dot(back, probe).real();
}

DirectionGroups group_by_direction(std::span<const FarFieldData> datasets) {
  if (datasets.empty()) throw std::invalid_argument("group_by_direction: no data sets");
  DirectionGroups groups;
  constexpr std::size_t kMissing = static_cast<std::size_t>(-1);
  for (std::size_t k = 0; k < datasets.size(); ++k) {
    const auto& inc = datasets[k].incidence;
    if (inc.pol_index != 1 && inc.pol_index != 2) {
      throw std::invalid_argument("group_by_direction: polarization index must be 1 or 2");
    }
    auto it = std::find(groups.directions.begin(), groups.directions.end(), inc.direction());
    std::size_t d = 0;
    if (it == groups.directions.end()) {
      groups.directions.push_back(inc.direction());
      groups.indices.push_back({kMissing, kMissing});
      d = groups.directions.size() - 1;
    } else {
      d = static_cast<std::size_t>(it - groups.directions.begin());
    }
    auto& slot = groups.indices[d][static_cast<std::size_t>(inc.pol_index - 1)];
    if (slot != kMissing) {
      throw std::invalid_argument("group_by_direction: duplicate polarization for direction " +
                                  std::to_string(d));
    }
    slot = k;
  }
  for (std::size_t d = 0; d < groups.indices.size(); ++d) {
    if (groups.indices[d][0] == kMissing || groups.indices[d][1] == kMissing) {
      throw std::invalid_argument("group_by_direction: incomplete polarization pair for direction " +
                                  std::to_string(d));
    }
  }
  return groups;
}

double td_multi(std::span<const FarFieldData> datasets, const Medium& medium,
                const TrialSpec& trial, const Vec3& z_s) {
  const DirectionGroups groups = group_by_direction(datasets);
  double sum = 0.0;
  for (const auto& pair : groups.indices) {
    sum += td_single(datasets[pair[0]], medium, trial, z_s);
    sum += td_single(datasets[pair[1]], medium, trial, z_s);
  }
  return sum / static_cast<double>(groups.directions.size());
}

double td_multi_closed_form(const Medium& medium, const InclusionSpec& inclusion,
                            const TrialSpec& trial, const Vec3& z_s) {
  const double k = medium.kappa;
  const double rho3 = inclusion.rho * inclusion.rho * inclusion.rho;
  const double c_eps = (1.0 / inclusion.eps_r - 1.0) * trial_contrast(trial);
  const Mat3 im_gamma = imag_green_dyad(medium, z_s, inclusion.center);
  const double contraction = contract(im_gamma * inclusion.polarization, trial.polarization * im_gamma);
  return rho3 * k * k * k * k / (medium.eps0 * medium.eps0) * c_eps * contraction;
}

void SearchGrid::validate() const {
  if (!origin.allFinite()) throw std::invalid_argument("grid.origin must be finite");
  if (!(spacing > 0.0) || !std::isfinite(spacing)) {
    throw std::invalid_argument("grid.spacing must be positive");
  }
  for (int d : dims) {
    if (d < 1) throw std::invalid_argument("grid.dims must be >= 1");
  }
}

std::size_t SearchGrid::size() const {
  return static_cast<std::size_t>(dims[0]) * static_cast<std::size_t>(dims[1]) *
         static_cast<std::size_t>(dims[2]);
}

std::size_t SearchGrid::linear(int ix, int iy, int iz) const {
  return static_cast<std::size_t>(ix) +
         static_cast<std::size_t>(dims[0]) *
             (static_cast<std::size_t>(iy) + static_cast<std::size_t>(dims[1]) * static_cast<std::size_t>(iz));
}

std::array<int, 3> SearchGrid::unravel(std::size_t index) const {
  const auto nx = static_cast<std::size_t>(dims[0]);
  const auto ny = static_cast<std::size_t>(dims[1]);
  return {static_cast<int>(index % nx), static_cast<int>((index / nx) % ny),
          static_cast<int>(index / (nx * ny))};
}

Vec3 SearchGrid::point(std::size_t index) const {
  const auto idx = unravel(index);
  return origin + spacing * Vec3(idx[0], idx[1], idx[2]);
}

std::vector<Vec3> SearchGrid::points() const {
  std::vector<Vec3> out(size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = point(i);
  return out;
}

SearchGrid SearchGrid::centered(const Vec3& center, double spacing, int dims) {
  const double half = 0.5 * spacing * (dims - 1);
  return SearchGrid{center - Vec3::Constant(half), spacing, {dims, dims, dims}};
}

ImageMap sweep_grid(const SearchGrid& grid, const Functional& functional) {
  grid.validate();
  ImageMap map{grid, std::vector<double>(grid.size()), std::nullopt};
  const auto total = static_cast<std::ptrdiff_t>(grid.size());
#pragma omp parallel for schedule(dynamic, 64)
  for (std::ptrdiff_t i = 0; i < total; ++i) {
    map.values[static_cast<std::size_t>(i)] = functional(grid.point(static_cast<std::size_t>(i)));
  }
  return map;
}

PeakInfo locate_peak(const ImageMap& map) {
  const auto& v = map.values;
  if (v.size() != map.grid.size() || v.empty()) {
    throw std::invalid_argument("locate_peak: value count does not match grid");
  }
  const auto [min_it, max_it] = std::minmax_element(v.begin(), v.end());
  if (*min_it == *max_it) throw std::invalid_argument("locate_peak: map is constant");

  // std::max_element returns the first maximum, i.e. scan-order tie break.
  const auto peak_index = static_cast<std::size_t>(std::max_element(v.begin(), v.end()) - v.begin());
  PeakInfo peak;
  peak.index = map.grid.unravel(peak_index);
  peak.location = map.grid.point(peak_index);
  peak.value = v[peak_index];
  const double half = peak.value > 0.0 ? 0.5 * peak.value : 0.5 * (peak.value + *min_it);

  double width_sum = 0.0;
  int used_axes = 0;
  for (int axis = 0; axis < 3; ++axis) {
    const int n = map.grid.dims[static_cast<std::size_t>(axis)];
    if (n < 2) continue;
    auto value_at = [&](int i) {
      auto idx = peak.index;
      idx[static_cast<std::size_t>(axis)] = i;
      return v[map.grid.linear(idx[0], idx[1], idx[2])];
    };
    // Crossing position in index units on one side; the grid edge if none.
    auto crossing = [&](int step) {
      int prev = peak.index[static_cast<std::size_t>(axis)];
      for (int i = prev + step; i >= 0 && i < n; prev = i, i += step) {
        const double vi = value_at(i);
        if (vi < half) {
          const double vp = value_at(prev);
          return prev + step * (vp - half) / (vp - vi);
        }
      }
      return static_cast<double>(prev);
    };
    const double width = (crossing(+1) - crossing(-1)) * map.grid.spacing;
    peak.axis_fwhm[static_cast<std::size_t>(axis)] = width;
    width_sum += width;
    ++used_axes;
  }
  peak.fwhm = used_axes > 0 ? width_sum / used_axes : map.grid.spacing;
  return peak;
}

}  // namespace tdscope
