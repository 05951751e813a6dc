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

#include "tdscope/em_kernels.hpp"
#include "tdscope/far_field_data.hpp"
#include "tdscope/imaging.hpp"
#include "tdscope/types.hpp"

// Batched evaluation of the topological derivative. With U_pi the weighted
// back-propagation phases of node i at point p and V_pd the incident phases
// of direction d, the functional at z_p is
//
//   scale * Re sum_d (U B)_pd V_pd,
//
// where B (nodes x directions) only depends on the data. Grid sweeps are cut
// into fixed-size blocks evaluated in parallel; every block runs the same
// dense products on the same shapes, so results do not depend on the thread
// count.

namespace tdscope {

/// Data-dependent factor B of the functional.
class TopologicalResponse {
 public:
  /// One data set gives the single-measurement functional; otherwise the data
  /// must form complete polarization pairs and give the 1/n-weighted sum.
  TopologicalResponse(std::span<const FarFieldData> datasets, const Medium& medium,
                      const TrialSpec& trial);

  const Eigen::MatrixXcd& matrix() const { return matrix_; }
  const std::vector<UnitVec3>& directions() const { return directions_; }
  const SphereQuadrature& quadrature() const { return *quad_; }
  double scale() const { return scale_; }
  bool multi() const { return multi_; }

 private:
  std::shared_ptr<const SphereQuadrature> quad_;
  std::vector<UnitVec3> directions_;
  Eigen::MatrixXcd matrix_;
  double scale_ = 0.0;
  bool multi_ = false;
};

/// Precomputed phases for a fixed set of probe points.
class ProbeBank {
 public:
  ProbeBank(const SphereQuadrature& quad, std::span<const UnitVec3> directions,
            const Medium& medium, std::span<const Vec3> points);

  std::size_t size() const { return static_cast<std::size_t>(node_phase_.rows()); }

  /// Writes the functional at every probe point into `out` (size() values).
  void evaluate(const TopologicalResponse& response, std::span<double> out) const;
  /// Same with a raw response matrix, for callers that rebuild B per trial.
  void evaluate(const Eigen::MatrixXcd& response, double scale, std::span<double> out) const;

 private:
  Eigen::MatrixXcd node_phase_;
  Eigen::MatrixXcd direction_phase_;
};

/// Parallel evaluation at arbitrary points.
std::vector<double> evaluate_points(const TopologicalResponse& response, const Medium& medium,
                                    std::span<const Vec3> points);

/// Parallel grid image; values match sweep_grid(grid, td_single/td_multi).
ImageMap image_grid(const TopologicalResponse& response, const Medium& medium,
                    const SearchGrid& grid);

/// Serial reference: sweep of the definition-level td_single / td_multi.
ImageMap reference_image(std::span<const FarFieldData> datasets, const Medium& medium,
                         const TrialSpec& trial, const SearchGrid& grid);

}  // namespace tdscope
