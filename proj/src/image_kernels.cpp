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

#include "tdscope/image_kernels.hpp"

#include <algorithm>
#include <stdexcept>

namespace tdscope {

namespace {

constexpr std::size_t kBlock = 128;

}  // namespace

TopologicalResponse::TopologicalResponse(std::span<const FarFieldData> datasets,
                                         const Medium& medium, const TrialSpec& trial) {
  if (datasets.empty()) throw std::invalid_argument("TopologicalResponse: no data sets");
  quad_ = datasets.front().quad;
  if (!quad_) throw std::invalid_argument("TopologicalResponse: data has no quadrature");
  for (const auto& d : datasets) {
    if (d.quad != quad_ && (d.quad == nullptr || d.quad->count() != quad_->count())) {
      throw std::invalid_argument("TopologicalResponse: data sets use different quadratures");
    }
    if (d.samples.size() != quad_->count()) {
      throw std::invalid_argument("TopologicalResponse: sample count does not match quadrature");
    }
  }
  const double k = medium.kappa;
  const double trial_factor = -(k * k / kFourPi) * (1.0 / trial.eps_r - 1.0);
  const auto nodes = static_cast<Eigen::Index>(quad_->count());
  const CMat3 m_delta = trial.polarization.cast<cdouble>();

  // Adds conj(Phi_i) . (i kappa M_delta a) into column `col`.
  auto accumulate = [&](const FarFieldData& data, Eigen::Index col) {
    const CVec3 probe = cdouble(0.0, k) * (m_delta * data.incidence.field_axis().cast<cdouble>());
    for (Eigen::Index i = 0; i < nodes; ++i) {
      matrix_(i, col) += bilinear_dot(data.samples[static_cast<std::size_t>(i)].conjugate(), probe);
    }
  };

  if (datasets.size() == 1) {
    directions_ = {datasets.front().incidence.direction()};
    matrix_ = Eigen::MatrixXcd::Zero(nodes, 1);
    accumulate(datasets.front(), 0);
    scale_ = trial_factor;
    multi_ = false;
    return;
  }
  const DirectionGroups groups = group_by_direction(datasets);
  directions_ = groups.directions;
  matrix_ = Eigen::MatrixXcd::Zero(nodes, static_cast<Eigen::Index>(directions_.size()));
  for (std::size_t d = 0; d < groups.indices.size(); ++d) {
    accumulate(datasets[groups.indices[d][0]], static_cast<Eigen::Index>(d));
    accumulate(datasets[groups.indices[d][1]], static_cast<Eigen::Index>(d));
  }
  scale_ = trial_factor / static_cast<double>(directions_.size());
  multi_ = true;
}

ProbeBank::ProbeBank(const SphereQuadrature& quad, std::span<const UnitVec3> directions,
                     const Medium& medium, std::span<const Vec3> points) {
  const auto p = static_cast<Eigen::Index>(points.size());
  const auto n = static_cast<Eigen::Index>(quad.count());
  const auto nd = static_cast<Eigen::Index>(directions.size());
  const double k = medium.kappa;
  node_phase_.resize(p, n);
  direction_phase_.resize(p, nd);
  const auto& nodes = quad.nodes();
  for (Eigen::Index i = 0; i < n; ++i) {
    const Vec3& x = nodes[static_cast<std::size_t>(i)].vec();
    const double w = quad.mean_weight(static_cast<std::size_t>(i));
    for (Eigen::Index r = 0; r < p; ++r) {
      node_phase_(r, i) = w * std::exp(cdouble(0.0, -k * x.dot(points[static_cast<std::size_t>(r)])));
    }
  }
  for (Eigen::Index d = 0; d < nd; ++d) {
    const Vec3& theta = directions[static_cast<std::size_t>(d)].vec();
    for (Eigen::Index r = 0; r < p; ++r) {
      direction_phase_(r, d) = std::exp(cdouble(0.0, k * theta.dot(points[static_cast<std::size_t>(r)])));
    }
  }
}

void ProbeBank::evaluate(const TopologicalResponse& response, std::span<double> out) const {
  evaluate(response.matrix(), response.scale(), out);
}

void ProbeBank::evaluate(const Eigen::MatrixXcd& response, double scale, std::span<double> out) const {
  if (response.rows() != node_phase_.cols() || response.cols() != direction_phase_.cols()) {
    throw std::invalid_argument("ProbeBank::evaluate: response shape does not match the bank");
  }
  if (out.size() != size()) throw std::invalid_argument("ProbeBank::evaluate: output size mismatch");
  const Eigen::MatrixXcd projected = node_phase_ * response;
  for (std::size_t r = 0; r < out.size(); ++r) {
    const auto row = static_cast<Eigen::Index>(r);
    out[r] = scale * projected.row(row).cwiseProduct(direction_phase_.row(row)).sum().real();
  }
}

std::vector<double> evaluate_points(const TopologicalResponse& response, const Medium& medium,
                                    std::span<const Vec3> points) {
  std::vector<double> out(points.size());
  const std::size_t blocks = (points.size() + kBlock - 1) / kBlock;
  const auto total = static_cast<std::ptrdiff_t>(blocks);
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t b = 0; b < total; ++b) {
    const std::size_t begin = static_cast<std::size_t>(b) * kBlock;
    const std::size_t end = std::min(points.size(), begin + kBlock);
    // Pad the last block by repeating its final point so every block has
    // identical shape.
    std::vector<Vec3> block(kBlock);
    for (std::size_t i = 0; i < kBlock; ++i) block[i] = points[std::min(begin + i, end - 1)];
    const ProbeBank bank(response.quadrature(), response.directions(), medium, block);
    std::vector<double> values(kBlock);
    bank.evaluate(response, values);
    std::copy_n(values.begin(), end - begin, out.begin() + static_cast<std::ptrdiff_t>(begin));
  }
  return out;
}

ImageMap image_grid(const TopologicalResponse& response, const Medium& medium,
                    const SearchGrid& grid) {
  grid.validate();
  const auto points = grid.points();
  return ImageMap{grid, evaluate_points(response, medium, points), std::nullopt};
}

ImageMap reference_image(std::span<const FarFieldData> datasets, const Medium& medium,
                         const TrialSpec& trial, const SearchGrid& grid) {
  grid.validate();
  ImageMap map{grid, std::vector<double>(grid.size()), std::nullopt};
  const bool single = datasets.size() == 1;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const Vec3 z = grid.point(i);
    map.values[i] = single ? td_single(datasets.front(), medium, trial, z)
                           : td_multi(datasets, medium, trial, z);
  }
  return map;
}

}  // namespace tdscope
