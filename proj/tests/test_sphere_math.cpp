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

#include <cmath>
#include <complex>
#include <random>

#include "oracles.hpp"
#include "tdscope/sphere_math.hpp"

using namespace tdscope;

TEST_CASE("spherical bessel special values") {
  CHECK(spherical_bessel_j(0, 0.0) == 1.0);
  CHECK(spherical_bessel_j(2, 0.0) == 0.0);
  CHECK(std::abs(spherical_bessel_j(0, kPi)) < 1e-15);
  // mpmath: sqrt(pi/2) besselj(2.5, 1)
  CHECK(spherical_bessel_j(2, 1.0) == doctest::Approx(0.06203505201137386110).epsilon(1e-14));
  CHECK(spherical_bessel_j(2, 1.0) == doctest::Approx(oracle::bessel_series(2, 1.0)).epsilon(1e-14));
}

TEST_CASE("spherical bessel matches the series across the switch point") {
  for (int n = 0; n <= 2; ++n) {
    for (double x : {1e-8, 1e-4, 0.01, 0.05, 0.3, 0.999, 1.0, 1.001, 1.7, 2.5}) {
      const double ref = oracle::bessel_series(n, x);
      CHECK(std::abs(spherical_bessel_j(n, x) - ref) <= 1e-12 * std::abs(ref) + 1e-300);
    }
  }
}

TEST_CASE("spherical bessel rejects bad input") {
  CHECK_THROWS_AS(spherical_bessel_j(3, 1.0), std::domain_error);
  CHECK_THROWS_AS(spherical_bessel_j(0, -1.0), std::domain_error);
  CHECK_THROWS_AS(spherical_bessel_j(1, std::nan("")), std::domain_error);
}

TEST_CASE("unit vectors") {
  const UnitVec3 u(3.0, 0.0, 4.0);
  CHECK(u.vec().norm() == doctest::Approx(1.0));
  CHECK(u.x() == doctest::Approx(0.6));
  CHECK_THROWS_AS(UnitVec3(0.0, 0.0, 0.0), std::invalid_argument);
}

TEST_CASE("fibonacci directions") {
  CHECK(fibonacci_directions(1).size() == 1);
  CHECK(fibonacci_directions(1)[0].vec().norm() == doctest::Approx(1.0));
  CHECK_THROWS_AS(fibonacci_directions(0), std::invalid_argument);

  const auto d100 = fibonacci_directions(100);
  double worst = -1.0;
  for (std::size_t i = 0; i < d100.size(); ++i) {
    for (std::size_t j = i + 1; j < d100.size(); ++j) worst = std::max(worst, d100[i].dot(d100[j].vec()));
  }
  CHECK(worst < 0.999);

  const auto d500 = fibonacci_directions(500);
  std::mt19937_64 gen(11);
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> uni(0.0, 10.0);
  const double kappa = 2.0 * kPi;
  for (int t = 0; t < 20; ++t) {
    const Vec3 d = Vec3(normal(gen), normal(gen), normal(gen)).normalized() * uni(gen) / kappa;
    std::complex<double> mean = 0.0;
    for (const auto& th : d500) mean += std::exp(std::complex<double>(0.0, kappa * th.dot(d)));
    mean /= 500.0;
    CHECK(std::abs(mean - oracle::bessel_series(0, kappa * d.norm())) < 2e-2);
  }
}

TEST_CASE("quadrature weights") {
  const auto q6 = build_quadrature(6);
  for (double w : q6.weights()) CHECK(w == doctest::Approx(4.0 * kPi / 6.0).epsilon(1e-15));
  CHECK_THROWS_AS(build_quadrature(5), std::invalid_argument);

  const auto q = build_quadrature(2000);
  double sum = 0.0;
  for (double w : q.weights()) {
    CHECK(w > 0.0);
    sum += w;
  }
  CHECK(std::abs(sum - 4.0 * kPi) < 1e-12);
  CHECK(q.mean_weight(3) == doctest::Approx(q.weights()[3] / (4.0 * kPi)));
}

TEST_CASE("quadrature integrates plane waves") {
  const double kappa = 2.0 * kPi;
  const Vec3 d = Vec3(0.3, -0.5, 0.81).normalized() * (5.0 / kappa);
  auto integrate = [&](const SphereQuadrature& q) {
    std::complex<double> sum = 0.0;
    for (std::size_t i = 0; i < q.count(); ++i) {
      sum += q.weights()[i] * std::exp(std::complex<double>(0.0, kappa * q.nodes()[i].dot(d)));
    }
    return sum;
  };
  const double exact = 4.0 * kPi * oracle::bessel_series(0, 5.0);
  CHECK(std::abs(integrate(build_quadrature(2000)) - exact) < 1e-6);
  // The equal-weight scheme is markedly less accurate.
  const auto equal = build_quadrature(2000, QuadratureScheme::FibonacciEqual);
  CHECK(equal.scheme() == QuadratureScheme::FibonacciEqual);
  CHECK(std::abs(integrate(equal) - exact) > 1e-6);
}

TEST_CASE("scheme names round trip") {
  for (auto s : {QuadratureScheme::FibonacciEqual, QuadratureScheme::FibonacciMomentFitted}) {
    CHECK(quadrature_scheme_from_string(to_string(s)) == s);
  }
  CHECK_THROWS_AS(quadrature_scheme_from_string("gauss"), std::invalid_argument);
}

TEST_CASE("orthonormal triads") {
  auto check_triad = [](const Triad& t) {
    CHECK(std::abs(t.perp1.dot(t.theta.vec())) < 1e-12);
    CHECK(std::abs(t.perp2.dot(t.theta.vec())) < 1e-12);
    CHECK(std::abs(t.perp1.dot(t.perp2.vec())) < 1e-12);
    CHECK((t.perp2.vec() - t.theta.vec().cross(t.perp1.vec())).norm() < 1e-12);
  };
  const Triad z = orthonormal_triad(UnitVec3(0.0, 0.0, 1.0));
  check_triad(z);
  CHECK(std::abs(z.perp1.z()) < 1e-15);
  CHECK(std::abs(z.perp2.z()) < 1e-15);
  check_triad(orthonormal_triad(UnitVec3(1.0, 0.0, 0.0)));
  std::mt19937_64 gen(5);
  std::normal_distribution<double> normal;
  for (int i = 0; i < 50; ++i) check_triad(orthonormal_triad(UnitVec3(normal(gen), normal(gen), normal(gen))));
  CHECK_THROWS_AS(z.perp(3), std::out_of_range);
}
