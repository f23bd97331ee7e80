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

#include "dpdepth/depth_kernels.h"

#include <cmath>
#include <vector>

#include <gtest/gtest.h>
#include <omp.h>

#include "dpdepth/depth.h"
#include "dpdepth/depth_reference.h"
#include "dpdepth/rng.h"
#include "dpdepth/simplex_internal.h"

namespace dpdepth {
namespace {

// Gaussian rows rounded to a coarse lattice so projections tie often.
Dataset LatticeData(std::size_t n, std::size_t d, std::uint64_t seed,
                    double step) {
  RngStream rng(seed, 0);
  Matrix m(n, d);
  for (Eigen::Index i = 0; i < m.size(); ++i) {
    m.data()[i] = step > 0 ? step * std::round(rng.Normal() / step) : rng.Normal();
  }
  return Dataset(std::move(m));
}

DirectionSet WithAxes(std::size_t d, std::size_t random, std::uint64_t seed) {
  Matrix u(random + 2 * d, d);
  if (random > 0) {
    RngStream rng(seed, 1);
    u.topRows(random) = SampleDirections(d, random, rng).directions();
  }
  u.bottomRows(2 * d).setZero();
  for (std::size_t j = 0; j < d; ++j) {
    u(random + 2 * j, j) = 1.0;
    u(random + 2 * j + 1, j) = -1.0;
  }
  return DirectionSet(std::move(u));
}

struct Shape {
  std::size_t n, d, M;
  double step;
};

class KernelVsReference : public ::testing::TestWithParam<Shape> {};

TEST_P(KernelVsReference, AllProjectionDepths) {
  const Shape sh = GetParam();
  const Dataset data = LatticeData(sh.n, sh.d, 100 + sh.n, sh.step);
  const DirectionSet dirs = WithAxes(sh.d, sh.M, 7 + sh.d);
  const kernels::ProjectionIndex index(data, dirs);
  RngStream px(3, 3);
  for (int k = 0; k < 40; ++k) {
    Vector x(sh.d);
    if (k % 4 == 0) {
      x = data.points().row(k % sh.n).transpose();  // sits on projection ties
    } else {
      for (std::size_t j = 0; j < sh.d; ++j) x[j] = 1.5 * px.Normal();
    }
    EXPECT_EQ(kernels::Halfspace(index, x), reference::Halfspace(x, data, dirs));
    EXPECT_EQ(kernels::IntegratedRankWeighted(index, x),
              reference::IntegratedRankWeighted(x, data, dirs));
    EXPECT_DOUBLE_EQ(kernels::IntegratedDual(index, x),
                     reference::IntegratedDual(x, data, dirs));
    for (double s : {0.5, 10.0, 1e3}) {
      Vector g;
      const double v = kernels::SmoothedIntegratedDual(index, x, s, &g);
      EXPECT_NEAR(v, reference::SmoothedIntegratedDual(x, data, dirs, s), 1e-14);
      const Vector gr = reference::SmoothedIntegratedDualGradient(x, data, dirs, s);
      EXPECT_LE((g - gr).norm(), 1e-12 * std::max(1.0, gr.norm()));
      EXPECT_EQ(kernels::SmoothedIntegratedDual(index, x, s, nullptr), v);
    }
    const Vector sign = kernels::MeanSpatialSign(data, x);
    EXPECT_NEAR(1.0 - sign.norm(), reference::Spatial(x, data), 1e-14);
    EXPECT_NEAR(1.0 - sign.squaredNorm(), reference::ModifiedSpatial(x, data), 1e-14);
  }
}

INSTANTIATE_TEST_SUITE_P(Shapes, KernelVsReference,
                         ::testing::Values(Shape{1, 1, 0, 0.0},
                                           Shape{7, 1, 0, 0.5},
                                           Shape{30, 2, 20, 0.0},
                                           Shape{50, 3, 40, 0.25},
                                           Shape{300, 4, 10, 0.5},
                                           Shape{600, 2, 5, 0.0}));

TEST(ProjectionIndex, CountsMatchDirectionalCdf) {
  const Dataset data = LatticeData(40, 2, 5, 0.5);
  const DirectionSet dirs = WithAxes(2, 5, 6);
  const kernels::ProjectionIndex index(data, dirs);
  const Vector x = data.points().row(3).transpose();
  std::vector<double> t;
  index.Project(x, &t);
  for (std::size_t m = 0; m < dirs.size(); ++m) {
    EXPECT_EQ(index.CountLessEqual(m, t[m]) / 40.0,
              reference::DirectionalCdf(x, dirs.row(m), data, false));
    EXPECT_EQ(index.CountLess(m, t[m]) / 40.0,
              reference::DirectionalCdf(x, dirs.row(m), data, true));
  }
}

TEST(ProjectionIndex, DimensionMismatch) {
  const Dataset data = LatticeData(5, 2, 5, 0.0);
  EXPECT_THROW(kernels::ProjectionIndex(data, DirectionSet::Line()),
               std::invalid_argument);
}

TEST(Determinism, ResultsIndependentOfThreadCount) {
  const Dataset data = LatticeData(1000, 5, 9, 0.0);
  RngStream rng(1, 9);
  const DirectionSet dirs = SampleDirections(5, 97, rng);
  const kernels::ProjectionIndex index(data, dirs);
  Vector x = Vector::Constant(5, 0.1);
  DepthEvaluator::Options opt;
  opt.directions = dirs;
  const DepthEvaluator sidd(DepthKind::SmoothedIntegratedDual(10), data, opt);
  Matrix probes = data.points().topRows(300) * 0.5;
  const int saved = omp_get_max_threads();
  std::vector<double> values[2];
  Vector grads[2];
  double sign_norm[2];
  for (int run = 0; run < 2; ++run) {
    omp_set_num_threads(run == 0 ? 1 : 4);
    kernels::SmoothedIntegratedDual(index, x, 10.0, &grads[run]);
    values[run] = sidd.Values(probes);
    sign_norm[run] = kernels::MeanSpatialSign(data, x).norm();
  }
  omp_set_num_threads(saved);
  EXPECT_EQ(values[0], values[1]);
  EXPECT_EQ(grads[0], grads[1]);
  EXPECT_EQ(sign_norm[0], sign_norm[1]);
}

TEST(SimplexTuple, AgreesWithPointInSimplex) {
  RngStream rng(11, 0);
  for (std::size_t d : {1u, 2u, 3u}) {
    for (int trial = 0; trial < 200; ++trial) {
      Matrix v(d + 1, d);
      for (Eigen::Index i = 0; i < v.size(); ++i) v.data()[i] = rng.Normal();
      if (trial % 10 == 0) v.row(d) = v.row(0);  // degenerate
      const internal::SimplexTuple tuple(v);
      for (int k = 0; k < 10; ++k) {
        Vector x(d);
        for (std::size_t j = 0; j < d; ++j) x[j] = 0.7 * rng.Normal();
        EXPECT_EQ(tuple.Contains(x), PointInSimplex(x, v));
      }
      EXPECT_TRUE(tuple.Contains(v.colwise().mean().transpose()) ||
                  tuple.degenerate());
    }
  }
}

TEST(SimplicialExact, EnumerationMatchesReference) {
  const Dataset data = LatticeData(7, 2, 13, 0.0);
  RngStream rng(14, 0);
  for (int k = 0; k < 10; ++k) {
    const Vector x = Vector::NullaryExpr(2, [&](Eigen::Index) { return 0.5 * rng.Normal(); });
    EXPECT_NEAR(SimplicialDepthExact(x, data),
                reference::SimplicialEnumerated(x, data), 1e-15);
  }
}

}  // namespace
}  // namespace dpdepth
