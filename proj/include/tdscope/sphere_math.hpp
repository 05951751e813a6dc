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

#include <string_view>
#include <vector>

#include "tdscope/types.hpp"

namespace tdscope {

/// Direction on the unit sphere S^2. Construction normalizes the input.
class UnitVec3 {
 public:
  UnitVec3() : v_(0.0, 0.0, 1.0) {}
  explicit UnitVec3(const Vec3& v);
  UnitVec3(double x, double y, double z) : UnitVec3(Vec3(x, y, z)) {}

  const Vec3& vec() const { return v_; }
  double x() const { return v_.x(); }
  double y() const { return v_.y(); }
  double z() const { return v_.z(); }
  double dot(const Vec3& other) const { return v_.dot(other); }

  friend bool operator==(const UnitVec3& a, const UnitVec3& b) {
    return a.v_ == b.v_;
  }

 private:
  Vec3 v_;
};

/// Right-handed orthonormal basis {theta, perp1, perp2} with perp2 = theta x perp1.
struct Triad {
  UnitVec3 theta;
  UnitVec3 perp1;
  UnitVec3 perp2;

  /// perp(1) or perp(2); anything else throws std::out_of_range.
  const UnitVec3& perp(int index) const;
};

enum class QuadratureScheme {
  /// Spherical Fibonacci nodes, every weight 4pi/count.
  FibonacciEqual,
  /// Spherical Fibonacci nodes with weights corrected to integrate all
  /// spherical harmonics up to a count-dependent degree exactly.
  FibonacciMomentFitted,
};

std::string_view to_string(QuadratureScheme scheme);
QuadratureScheme quadrature_scheme_from_string(std::string_view name);

/// Nodes and weights approximating integrals over S^2. Weights are in
/// steradians and sum to 4pi.
class SphereQuadrature {
 public:
  SphereQuadrature(std::vector<UnitVec3> nodes, std::vector<double> weights,
                   QuadratureScheme scheme, int exact_degree);

  const std::vector<UnitVec3>& nodes() const { return nodes_; }
  const std::vector<double>& weights() const { return weights_; }
  QuadratureScheme scheme() const { return scheme_; }
  std::size_t count() const { return nodes_.size(); }
  /// Highest harmonic degree integrated exactly by construction (0 for the
  /// equal-weight scheme).
  int exact_degree() const { return exact_degree_; }

  /// Weight of node i against the normalized measure ds/4pi.
  double mean_weight(std::size_t i) const { return weights_[i] / kFourPi; }

 private:
  std::vector<UnitVec3> nodes_;
  std::vector<double> weights_;
  QuadratureScheme scheme_;
  int exact_degree_;
};

/// Spherical Bessel function of the first kind, orders 0 to 2.
/// Throws std::domain_error for other orders or negative/non-finite x.
double spherical_bessel_j(int order, double x);

/// Deterministic spherical Fibonacci lattice of n approximately
/// equidistributed directions.
std::vector<UnitVec3> fibonacci_directions(int n);

/// Quadrature with `count` Fibonacci nodes. Throws std::invalid_argument when
/// count < 6.
SphereQuadrature build_quadrature(
    int count, QuadratureScheme scheme = QuadratureScheme::FibonacciMomentFitted);

/// Deterministic triad: perp1 = normalize(theta x e_k) where e_k is the
/// canonical axis of the smallest |theta_k|.
Triad orthonormal_triad(const UnitVec3& theta);

}  // namespace tdscope
