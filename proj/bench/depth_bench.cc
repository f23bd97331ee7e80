//
// Copyright 2026 The dpdepth Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

// OpenMP depth kernels against the serial reference implementations.
// Kernel benchmarks take a third argument: the OpenMP thread count.

#include <omp.h>

#include <benchmark/benchmark.h>

#include "dpdepth/core.h"
#include "dpdepth/depth_kernels.h"
#include "dpdepth/depth_reference.h"
#include "dpdepth/harness.h"
#include "dpdepth/rng.h"

namespace dpdepth {
namespace {

constexpr std::size_t kDim = 10;
constexpr double kS = 10.0;

struct Fixture {
  Dataset data;
  DirectionSet dirs;
  Vector x;
};

Fixture Make(const benchmark::State& state) {
  RngStream rng(11, 0);
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto m = static_cast<std::size_t>(state.range(1));
  Dataset data = GenGaussian(n, kDim, Vector::Zero(kDim), 1.0, rng);
  DirectionSet dirs = SampleDirections(kDim, m, rng);
  return {std::move(data), std::move(dirs), Vector::Constant(kDim, 0.1)};
}

void SetThreads(const benchmark::State& state) {
  omp_set_num_threads(static_cast<int>(state.range(2)));
}

void BM_HalfspaceKernel(benchmark::State& state) {
  const Fixture f = Make(state);
  SetThreads(state);
  const kernels::ProjectionIndex index(f.data, f.dirs);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::Halfspace(index, f.x));
}

void BM_HalfspaceReference(benchmark::State& state) {
  const Fixture f = Make(state);
  for (auto _ : state) benchmark::DoNotOptimize(reference::Halfspace(f.x, f.data, f.dirs));
}

void BM_IntegratedDualKernel(benchmark::State& state) {
  const Fixture f = Make(state);
  SetThreads(state);
  const kernels::ProjectionIndex index(f.data, f.dirs);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::IntegratedDual(index, f.x));
}

void BM_IntegratedDualReference(benchmark::State& state) {
  const Fixture f = Make(state);
  for (auto _ : state) {
    benchmark::DoNotOptimize(reference::IntegratedDual(f.x, f.data, f.dirs));
  }
}

void BM_SiddGradientKernel(benchmark::State& state) {
  const Fixture f = Make(state);
  SetThreads(state);
  const kernels::ProjectionIndex index(f.data, f.dirs);
  Vector grad;
  for (auto _ : state) {
    benchmark::DoNotOptimize(kernels::SmoothedIntegratedDual(index, f.x, kS, &grad));
  }
}

void BM_SiddGradientReference(benchmark::State& state) {
  const Fixture f = Make(state);
  for (auto _ : state) {
    benchmark::DoNotOptimize(reference::SmoothedIntegratedDual(f.x, f.data, f.dirs, kS));
    benchmark::DoNotOptimize(
        reference::SmoothedIntegratedDualGradient(f.x, f.data, f.dirs, kS));
  }
}

void BM_SpatialKernel(benchmark::State& state) {
  const Fixture f = Make(state);
  SetThreads(state);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::MeanSpatialSign(f.data, f.x));
}

void BM_SpatialReference(benchmark::State& state) {
  const Fixture f = Make(state);
  for (auto _ : state) benchmark::DoNotOptimize(reference::Spatial(f.x, f.data));
}

void KernelArgs(benchmark::internal::Benchmark* b) {
  const int max_threads = omp_get_num_procs();
  for (int n : {1000, 10000}) {
    for (int m : {100, 1000}) {
      for (int t = 1; t <= max_threads; t *= 2) b->Args({n, m, t});
    }
  }
  b->ArgNames({"n", "M", "threads"})->Unit(benchmark::kMicrosecond);
}

void ReferenceArgs(benchmark::internal::Benchmark* b) {
  for (int n : {1000, 10000}) {
    for (int m : {100, 1000}) b->Args({n, m});
  }
  b->ArgNames({"n", "M"})->Unit(benchmark::kMicrosecond);
}

BENCHMARK(BM_HalfspaceKernel)->Apply(KernelArgs);
BENCHMARK(BM_HalfspaceReference)->Apply(ReferenceArgs);
BENCHMARK(BM_IntegratedDualKernel)->Apply(KernelArgs);
BENCHMARK(BM_IntegratedDualReference)->Apply(ReferenceArgs);
BENCHMARK(BM_SiddGradientKernel)->Apply(KernelArgs);
BENCHMARK(BM_SiddGradientReference)->Apply(ReferenceArgs);
BENCHMARK(BM_SpatialKernel)->Apply(KernelArgs);
BENCHMARK(BM_SpatialReference)->Apply(ReferenceArgs);

}  // namespace
}  // namespace dpdepth

BENCHMARK_MAIN();
