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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <omp.h>

#include <cmath>
#include <memory>
#include <random>

#include "tdscope/em_kernels.hpp"
#include "tdscope/image_kernels.hpp"
#include "tdscope/imaging.hpp"

using namespace tdscope;

namespace {

const Vec3 kZd(0.234, -0.167, 0.113);

struct Scene {
  Medium medium;
  InclusionSpec inclusion = InclusionSpec::sphere(kZd, 0.05, 3.0, 4.0 * kPi / 3.0);
  TrialSpec trial = TrialSpec::sphere(3.0, 4.0 * kPi / 3.0);
  std::shared_ptr<const SphereQuadrature> quad;
  std::vector<Incidence> incidences;
  std::vector<FarFieldData> data;

  Scene(int n_directions, int count) : quad(std::make_shared<const SphereQuadrature>(build_quadrature(count))) {
    incidences = make_incidences(fibonacci_directions(n_directions));
    data = synthesize_far_field(medium, inclusion, incidences, quad);
  }
};

double sphere_factor(double eps_r, double volume) { return 3.0 / (2.0 / eps_r + 1.0) * volume; }

std::vector<FarFieldData> zeroed(std::vector<FarFieldData> data) {
  for (auto& d : data) {
    for (auto& s : d.samples) s.setZero();
  }
  return data;
}

}  // namespace

TEST_CASE("herglotz of a projected plane wave") {
  const Medium m;
  const auto quad = build_quadrature(2000);
  const CVec3 c(cdouble(1.0, -0.2), cdouble(0.4, 0.9), cdouble(-0.6, 0.3));
  const Vec3 z0(0.1, 0.2, -0.3);
  std::vector<CVec3> phi;
  for (const auto& node : quad.nodes()) {
    const CVec3 x = node.vec().cast<cdouble>();
    phi.push_back((c - x * bilinear_dot(x, c)) * std::exp(cdouble(0.0, -m.kappa * node.dot(z0))));
  }
  std::mt19937_64 gen(2);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int t = 0; t < 20; ++t) {
    const Vec3 z = z0 + Vec3(u(gen), u(gen), u(gen));
    const CVec3 expected = -(4.0 * kPi / (m.kappa * m.eps0)) * (imag_green_dyad(m, z, z0).cast<cdouble>() * c);
    CHECK((herglotz(phi, quad, m, z) - expected).norm() < 1e-6 * expected.norm());
  }
  const std::vector<CVec3> zero(quad.count(), CVec3::Zero());
  CHECK(herglotz(zero, quad, m, z0).norm() == 0.0);
  CHECK_THROWS_AS(herglotz(std::span(phi).first(10), quad, m, z0), std::invalid_argument);
}

TEST_CASE("herglotz of synthetic data") {
  const Scene s(2, 2000);
  const Incidence& inc = s.incidences[1];
  const double k = s.medium.kappa;
  const CVec3 at_zd = herglotz_closed_form(s.medium, s.inclusion, inc, kZd);
  const CVec3 expected = k * 0.05 * 0.05 * 0.05 * (1.0 / 3.0 - 1.0) * (-k / (6.0 * kPi)) *
                         (s.inclusion.polarization.cast<cdouble>() * incident_plane_wave(s.medium, inc, kZd));
  CHECK((at_zd - expected).norm() < 1e-14 * expected.norm());

  std::mt19937_64 gen(4);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int t = 0; t < 30; ++t) {
    const Vec3 z = kZd + Vec3(u(gen), u(gen), u(gen));
    const CVec3 closed = herglotz_closed_form(s.medium, s.inclusion, inc, z);
    CHECK((herglotz(s.data[1].samples, *s.quad, s.medium, z) - closed).norm() < 1e-6 * closed.norm());
  }
  auto clear = s.inclusion;
  clear.eps_r = 1.0;
  CHECK(herglotz_closed_form(s.medium, clear, inc, kZd).norm() == 0.0);
}

TEST_CASE("single-measurement functional") {
  const Scene s(1, 2000);
  const auto grid = SearchGrid::centered(kZd, 0.1, 9);
  const auto points = grid.points();
  double peak = 0.0;
  for (const auto& p : points) {
    peak = std::max(peak, std::abs(td_single_closed_form(s.medium, s.inclusion, s.trial, s.incidences[0], p)));
  }
  for (const auto& p : points) {
    const double closed = td_single_closed_form(s.medium, s.inclusion, s.trial, s.incidences[0], p);
    CHECK(std::abs(td_single(s.data[0], s.medium, s.trial, p) - closed) < 1e-6 * peak);
  }
  CHECK(td_single_closed_form(s.medium, s.inclusion, s.trial, s.incidences[0], kZd) > 0.0);
  CHECK(td_single(zeroed(s.data)[0], s.medium, s.trial, kZd) == 0.0);
  CHECK(td_single(s.data[0], s.medium, TrialSpec::sphere(1.0, 1.0), kZd) == 0.0);
  auto clear = s.inclusion;
  clear.eps_r = 1.0;
  CHECK(td_single_closed_form(s.medium, clear, s.trial, s.incidences[0], kZd) == 0.0);
}

TEST_CASE("single-measurement closed form decays like 1/(kappa r)") {
  const Scene s(1, 6);
  const double peak = td_single_closed_form(s.medium, s.inclusion, s.trial, s.incidences[0], kZd);
  const Vec3 dir = Vec3(1.0, 1.0, 1.0).normalized();
  // Largest |value| * kappa r over one wavelength of radial offsets.
  auto envelope = [&](double r0) {
    double best = 0.0;
    for (int i = 0; i < 200; ++i) {
      const double r = r0 + i * 0.005;
      const double v = td_single_closed_form(s.medium, s.inclusion, s.trial, s.incidences[0], kZd + r * dir);
      best = std::max(best, std::abs(v) * s.medium.kappa * r / peak);
    }
    return best;
  };
  const double e20 = envelope(20.0);
  const double e40 = envelope(40.0);
  CHECK(e20 > 0.1);
  CHECK(e40 / e20 == doctest::Approx(1.0).epsilon(0.1));
}

TEST_CASE("multi-measurement functional") {
  const Scene s(200, 2000);
  const double k = s.medium.kappa;
  const double m_rho = sphere_factor(3.0, 4.0 * kPi / 3.0);
  const double c_eps = (1.0 / 3.0 - 1.0) * (1.0 / 3.0 - 1.0);
  const double at_zd = 0.05 * 0.05 * 0.05 * k * k * k * k * c_eps * m_rho * m_rho * 3.0 * std::pow(k / (6.0 * kPi), 2);
  CHECK(td_multi_closed_form(s.medium, s.inclusion, s.trial, kZd) == doctest::Approx(at_zd).epsilon(1e-13));
  CHECK(at_zd > 0.0);

  const auto grid = SearchGrid::centered(kZd, 0.15, 5);
  const auto numeric = evaluate_points(TopologicalResponse(s.data, s.medium, s.trial), s.medium, grid.points());
  const auto points = grid.points();
  for (std::size_t i = 0; i < points.size(); ++i) {
    CHECK(std::abs(numeric[i] - td_multi_closed_form(s.medium, s.inclusion, s.trial, points[i])) < 2e-2 * at_zd);
  }
  auto clear = s.inclusion;
  clear.eps_r = 1.0;
  CHECK(td_multi_closed_form(s.medium, clear, s.trial, kZd) == 0.0);
}

TEST_CASE("multi-measurement functional with one direction") {
  const Scene s(1, 500);
  const Vec3 z(0.1, 0.0, -0.2);
  const double sum = td_single(s.data[0], s.medium, s.trial, z) + td_single(s.data[1], s.medium, s.trial, z);
  CHECK(td_multi(s.data, s.medium, s.trial, z) == doctest::Approx(sum).epsilon(1e-14));
  CHECK(td_multi(zeroed(s.data), s.medium, s.trial, z) == 0.0);
}

TEST_CASE("direction grouping") {
  const Scene s(3, 50);
  const auto groups = group_by_direction(s.data);
  CHECK(groups.directions.size() == 3);
  CHECK(groups.indices[2][1] == 5);
  CHECK_THROWS_AS(group_by_direction(std::span(s.data).first(3)), std::invalid_argument);
  auto dup = s.data;
  dup[1].incidence.pol_index = 1;
  CHECK_THROWS_AS(group_by_direction(dup), std::invalid_argument);
}

TEST_CASE("search grid indexing") {
  SearchGrid g{Vec3(1.0, 2.0, 3.0), 0.5, {3, 4, 5}};
  CHECK(g.size() == 60);
  CHECK(g.linear(1, 0, 0) == 1);
  CHECK(g.linear(0, 1, 0) == 3);
  CHECK(g.linear(0, 0, 1) == 12);
  CHECK(g.unravel(g.linear(2, 3, 4)) == std::array<int, 3>{2, 3, 4});
  CHECK((g.point(g.linear(2, 1, 0)) - Vec3(2.0, 2.5, 3.0)).norm() < 1e-15);
  const auto c = SearchGrid::centered(Vec3(0.5, 0.5, 0.5), 0.1, 11);
  CHECK((c.point(c.linear(5, 5, 5)) - Vec3(0.5, 0.5, 0.5)).norm() < 1e-15);
  CHECK_THROWS_AS((SearchGrid{Vec3::Zero(), 0.0, {1, 1, 1}}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((SearchGrid{Vec3::Zero(), 0.1, {0, 1, 1}}.validate()), std::invalid_argument);
}

TEST_CASE("grid sweeps") {
  const SearchGrid g{Vec3::Zero(), 0.1, {4, 3, 2}};
  const auto constant = sweep_grid(g, [](const Vec3&) { return 2.5; });
  for (double v : constant.values) CHECK(v == 2.5);
  CHECK_THROWS_AS(locate_peak(constant), std::invalid_argument);

  const Scene s(2, 200);
  const SearchGrid one{kZd, 0.1, {1, 1, 1}};
  const auto single_point = reference_image(s.data, s.medium, s.trial, one);
  CHECK(single_point.values.size() == 1);
  CHECK(single_point.values[0] == td_multi(s.data, s.medium, s.trial, kZd));
}

TEST_CASE("peak location and width") {
  SearchGrid g{Vec3::Zero(), 0.2, {7, 7, 7}};
  ImageMap spike{g, std::vector<double>(g.size(), 0.0), std::nullopt};
  spike.values[g.linear(3, 2, 4)] = 1.0;
  const auto p = locate_peak(spike);
  CHECK(p.index == std::array<int, 3>{3, 2, 4});
  CHECK(p.fwhm == doctest::Approx(0.2));

  const Scene s(20, 2000);
  SearchGrid on_zd = SearchGrid::centered(kZd, 0.1, 9);
  const auto map = image_grid(TopologicalResponse(s.data, s.medium, s.trial), s.medium, on_zd);
  const auto peak = locate_peak(map);
  CHECK(peak.index == std::array<int, 3>{4, 4, 4});

  ImageMap scaled = map;
  for (auto& v : scaled.values) v *= 7.5;
  const auto peak_scaled = locate_peak(scaled);
  CHECK(peak_scaled.index == peak.index);
  CHECK(peak_scaled.fwhm == doctest::Approx(peak.fwhm).epsilon(1e-12));

  const auto closed = sweep_grid(SearchGrid::centered(kZd, 0.05, 31), [&](const Vec3& z) {
    return td_multi_closed_form(s.medium, s.inclusion, s.trial, z);
  });
  const double fwhm = locate_peak(closed).fwhm / s.medium.wavelength();
  CHECK(fwhm >= 0.4);
  CHECK(fwhm <= 0.6);
}

TEST_CASE("parallel kernel matches the serial reference") {
  const Scene s(4, 300);
  const SearchGrid g = SearchGrid::centered(kZd, 0.13, 7);
  const auto ref = reference_image(s.data, s.medium, s.trial, g);
  const TopologicalResponse response(s.data, s.medium, s.trial);
  CHECK(response.multi());
  double scale = 0.0;
  for (double v : ref.values) scale = std::max(scale, std::abs(v));
  const int saved = omp_get_max_threads();
  omp_set_num_threads(1);
  const auto one = image_grid(response, s.medium, g);
  omp_set_num_threads(3);
  const auto three = image_grid(response, s.medium, g);
  omp_set_num_threads(saved);
  CHECK(one.values == three.values);
  for (std::size_t i = 0; i < ref.values.size(); ++i) CHECK(std::abs(one.values[i] - ref.values[i]) < 1e-12 * scale);

  const std::vector<FarFieldData> first(s.data.begin(), s.data.begin() + 1);
  const TopologicalResponse single(first, s.medium, s.trial);
  CHECK_FALSE(single.multi());
  const auto single_ref = reference_image(first, s.medium, s.trial, g);
  const auto single_fast = image_grid(single, s.medium, g);
  double single_scale = 0.0;
  for (double v : single_ref.values) single_scale = std::max(single_scale, std::abs(v));
  for (std::size_t i = 0; i < g.size(); ++i) {
    CHECK(std::abs(single_fast.values[i] - single_ref.values[i]) < 1e-12 * single_scale);
  }
}
