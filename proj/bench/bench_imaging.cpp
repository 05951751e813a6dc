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

// Serial reference image vs. the blocked OpenMP kernel on the same data.

#include <omp.h>

#include <memory>

#include <benchmark/benchmark.h>

#include "tdscope/em_kernels.hpp"
#include "tdscope/image_kernels.hpp"
#include "tdscope/imaging.hpp"

namespace {

using namespace tdscope;

struct Fixture {
  Medium medium;
  InclusionSpec inclusion = InclusionSpec::sphere(Vec3(0.234, -0.167, 0.113), 0.05, 3.0, 4.0 * kPi / 3.0);
  TrialSpec trial = TrialSpec::sphere(3.0, 4.0 * kPi / 3.0);
  std::vector<FarFieldData> data;

  Fixture(int n_directions, int count) {
    auto quad = std::make_shared<const SphereQuadrature>(build_quadrature(count));
    const auto incidences = make_incidences(fibonacci_directions(n_directions));
    data = synthesize_far_field(medium, inclusion, incidences, quad);
  }
};

void BM_ReferenceImage(benchmark::State& state) {
  const Fixture fx(static_cast<int>(state.range(0)), 500);
  const auto grid = SearchGrid::centered(Vec3::Zero(), 0.1, static_cast<int>(state.range(1)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(reference_image(fx.data, fx.medium, fx.trial, grid).values.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(grid.size()));
}

void BM_ParallelImage(benchmark::State& state) {
  const Fixture fx(static_cast<int>(state.range(0)), 500);
  const auto grid = SearchGrid::centered(Vec3::Zero(), 0.1, static_cast<int>(state.range(1)));
  omp_set_num_threads(static_cast<int>(state.range(2)));
  for (auto _ : state) {
    const TopologicalResponse response(fx.data, fx.medium, fx.trial);
    benchmark::DoNotOptimize(image_grid(response, fx.medium, grid).values.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(grid.size()));
}

BENCHMARK(BM_ReferenceImage)->Args({10, 9})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ParallelImage)
    ->ArgsProduct({{10}, {9, 21}, {1, 2, 4}})
    ->ArgNames({"n", "side", "threads"})
    ->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
