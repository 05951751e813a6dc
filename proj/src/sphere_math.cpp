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

#include "tdscope/sphere_math.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace tdscope {

namespace {

constexpr double kSeriesSwitch = 1.0;
constexpr int kSeriesTerms = 16;

// x^n sum_k (-x^2/2)^k / (k! (2n+2k+1)!!)
double bessel_series(int order, double x) {
  double double_factorial = 1.0;
  for (int k = 3; k <= 2 * order + 1; k += 2) double_factorial *= k;
  const double x2 = 0.5 * x * x;
  double term = std::pow(x, order) / double_factorial;
  double sum = term;
  for (int k = 1; k < kSeriesTerms; ++k) {
    term *= -x2 / (k * (2.0 * order + 2.0 * k + 1.0));
    sum += term;
  }
  return sum;
}

// Fully normalized real spherical harmonics up to `degree` at one direction,
// written into `out` in (l, m) order: m = 0, then cos/sin pairs for m > 0.
void real_harmonics(const Vec3& dir, int degree, double* out) {
  const double z = std::clamp(dir.z(), -1.0, 1.0);
  const double s = std::sqrt(std::max(0.0, 1.0 - z * z));
  const double phi = std::atan2(dir.y(), dir.x());
  const int n = degree + 1;
  // Orthonormal associated Legendre functions: Y_lm = pbar(l,m) e^{i m phi}.
  std::vector<double> pbar(static_cast<std::size_t>(n * n), 0.0);
  auto at = [n](int l, int m) { return static_cast<std::size_t>(l * n + m); };
  pbar[at(0, 0)] = std::sqrt(1.0 / kFourPi);
  for (int m = 1; m <= degree; ++m) {
    pbar[at(m, m)] = std::sqrt((2.0 * m + 1.0) / (2.0 * m)) * s * pbar[at(m - 1, m - 1)];
  }
  for (int m = 0; m < degree; ++m) {
    pbar[at(m + 1, m)] = std::sqrt(2.0 * m + 3.0) * z * pbar[at(m, m)];
  }
  for (int m = 0; m <= degree; ++m) {
    for (int l = m + 2; l <= degree; ++l) {
      const double l2 = static_cast<double>(l) * l;
      const double m2 = static_cast<double>(m) * m;
      const double a = std::sqrt((4.0 * l2 - 1.0) / (l2 - m2));
      const double lm1 = l - 1.0;
      const double b = std::sqrt((lm1 * lm1 - m2) / (4.0 * lm1 * lm1 - 1.0));
      pbar[at(l, m)] = a * (z * pbar[at(l - 1, m)] - b * pbar[at(l - 2, m)]);
    }
  }
  std::size_t k = 0;
  for (int l = 0; l <= degree; ++l) {
    out[k++] = pbar[at(l, 0)];
    for (int m = 1; m <= l; ++m) {
      out[k++] = std::sqrt(2.0) * pbar[at(l, m)] * std::cos(m * phi);
      out[k++] = std::sqrt(2.0) * pbar[at(l, m)] * std::sin(m * phi);
    }
  }
}

// Minimum-norm correction of the uniform weights so that every harmonic of
// degree <= `degree` is integrated exactly. Returns an empty vector if the
// result is not strictly positive.
std::vector<double> fit_weights(const std::vector<UnitVec3>& nodes, int degree) {
  const auto count = static_cast<Eigen::Index>(nodes.size());
  const Eigen::Index rows = static_cast<Eigen::Index>(degree + 1) * (degree + 1);
  Eigen::MatrixXd basis(rows, count);
  for (Eigen::Index i = 0; i < count; ++i) {
    real_harmonics(nodes[static_cast<std::size_t>(i)].vec(), degree, basis.col(i).data());
  }
  Eigen::VectorXd uniform = Eigen::VectorXd::Constant(count, kFourPi / static_cast<double>(count));
  Eigen::VectorXd moments = Eigen::VectorXd::Zero(rows);
  moments(0) = std::sqrt(kFourPi);
  Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(rows, rows);
  gram.selfadjointView<Eigen::Lower>().rankUpdate(basis);
  Eigen::LLT<Eigen::MatrixXd> llt(gram);
  if (llt.info() != Eigen::Success) return {};
  const Eigen::VectorXd correction = basis.transpose() * llt.solve(moments - basis * uniform);
  const Eigen::VectorXd fitted = uniform + correction;
  if (fitted.minCoeff() <= 0.0) return {};
  return {fitted.data(), fitted.data() + fitted.size()};
}

}  // namespace

UnitVec3::UnitVec3(const Vec3& v) {
  const double norm = v.norm();
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    throw std::invalid_argument("UnitVec3: cannot normalize a zero or non-finite vector");
  }
  v_ = v / norm;
}

const UnitVec3& Triad::perp(int index) const {
  if (index == 1) return perp1;
  if (index == 2) return perp2;
  throw std::out_of_range("Triad::perp: index must be 1 or 2, got " + std::to_string(index));
}

std::string_view to_string(QuadratureScheme scheme) {
  switch (scheme) {
    case QuadratureScheme::FibonacciEqual: return "fibonacci_equal";
    case QuadratureScheme::FibonacciMomentFitted: return "fibonacci_moment_fitted";
  }
  return "unknown";
}

QuadratureScheme quadrature_scheme_from_string(std::string_view name) {
  if (name == "fibonacci_equal") return QuadratureScheme::FibonacciEqual;
  if (name == "fibonacci_moment_fitted") return QuadratureScheme::FibonacciMomentFitted;
  throw std::invalid_argument("unknown quadrature scheme '" + std::string(name) + "'");
}

SphereQuadrature::SphereQuadrature(std::vector<UnitVec3> nodes, std::vector<double> weights,
                                   QuadratureScheme scheme, int exact_degree)
    : nodes_(std::move(nodes)), weights_(std::move(weights)), scheme_(scheme),
      exact_degree_(exact_degree) {
  if (nodes_.size() != weights_.size() || nodes_.empty()) {
    throw std::invalid_argument("SphereQuadrature: nodes and weights must be non-empty and equal in size");
  }
  if (*std::min_element(weights_.begin(), weights_.end()) <= 0.0) {
    throw std::invalid_argument("SphereQuadrature: weights must be positive");
  }
}

double spherical_bessel_j(int order, double x) {
  if (order < 0 || order > 2) {
    throw std::domain_error("spherical_bessel_j: unsupported order " + std::to_string(order));
  }
  if (!std::isfinite(x) || x < 0.0) {
    throw std::domain_error("spherical_bessel_j: argument must be finite and non-negative");
  }
  if (x < kSeriesSwitch) return bessel_series(order, x);
  const double s = std::sin(x);
  const double c = std::cos(x);
  switch (order) {
    case 0: return s / x;
    case 1: return s / (x * x) - c / x;
    default: return (3.0 / (x * x * x) - 1.0 / x) * s - 3.0 * c / (x * x);
  }
}

std::vector<UnitVec3> fibonacci_directions(int n) {
  if (n < 1) throw std::invalid_argument("fibonacci_directions: n must be >= 1");
  const double golden_angle = kPi * (3.0 - std::sqrt(5.0));
  std::vector<UnitVec3> dirs;
  dirs.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double z = 1.0 - (2.0 * i + 1.0) / n;
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double phi = golden_angle * i;
    dirs.emplace_back(r * std::cos(phi), r * std::sin(phi), z);
  }
  return dirs;
}

SphereQuadrature build_quadrature(int count, QuadratureScheme scheme) {
  if (count < 6) {
    throw std::invalid_argument("build_quadrature: count must be >= 6, got " + std::to_string(count));
  }
  auto nodes = fibonacci_directions(count);
  if (scheme == QuadratureScheme::FibonacciMomentFitted) {
    // (L+1)^2 <= count/2 keeps the Gram matrix well conditioned.
    for (int degree = static_cast<int>(std::sqrt(count / 2.0)) - 1; degree >= 0; --degree) {
      auto weights = fit_weights(nodes, degree);
      if (!weights.empty()) {
        return SphereQuadrature(std::move(nodes), std::move(weights), scheme, degree);
      }
    }
  }
  std::vector<double> weights(static_cast<std::size_t>(count), kFourPi / count);
  return SphereQuadrature(std::move(nodes), std::move(weights), QuadratureScheme::FibonacciEqual, 0);
}

Triad orthonormal_triad(const UnitVec3& theta) {
  const Vec3& t = theta.vec();
  Eigen::Index axis = 0;
  t.cwiseAbs().minCoeff(&axis);
  const Vec3 perp1 = t.cross(Vec3::Unit(axis)).normalized();
  const Vec3 perp2 = t.cross(perp1);
  return Triad{theta, UnitVec3(perp1), UnitVec3(perp2)};
}

}  // namespace tdscope
