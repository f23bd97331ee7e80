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

#include <algorithm>
#include <cmath>
#include <vector>

#include "dpdepth/depth.h"
#include "dpdepth/simplex_internal.h"

namespace dpdepth {
namespace {

constexpr double kTol = 1e-10;

// Vertices given as columns of `v` (d x k), pairwise distinct.
bool InHull(const Vector& x, const Eigen::MatrixXd& v, double scale) {
  const Eigen::Index d = v.rows();
  const Eigen::Index k = v.cols();
  Eigen::MatrixXd a(d + 1, k);
  a.topRows(d) = v;
  a.row(d).setOnes();
  Eigen::VectorXd b(d + 1);
  b.head(d) = x;
  b(d) = 1.0;
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(a);
  qr.setThreshold(1e-12);
  if (qr.rank() == k) {
    const Eigen::VectorXd lambda = qr.solve(b);
    if ((a * lambda - b).lpNorm<Eigen::Infinity>() > kTol * scale) return false;
    return lambda.minCoeff() >= -kTol;
  }
  if (k == 1) return false;
  for (Eigen::Index drop = 0; drop < k; ++drop) {
    Eigen::MatrixXd sub(d, k - 1);
    for (Eigen::Index c = 0, out = 0; c < k; ++c) {
      if (c != drop) sub.col(out++) = v.col(c);
    }
    if (InHull(x, sub, scale)) return true;
  }
  return false;
}

}  // namespace

bool PointInSimplex(const Vector& x, const Matrix& vertices) {
  const Eigen::Index d = vertices.cols();
  if (x.size() != d) throw std::invalid_argument("point dimension mismatch");
  std::vector<Eigen::Index> unique;
  for (Eigen::Index r = 0; r < vertices.rows(); ++r) {
    bool seen = false;
    for (Eigen::Index u : unique) {
      if (vertices.row(u) == vertices.row(r)) {
        seen = true;
        break;
      }
    }
    if (!seen) unique.push_back(r);
  }
  Eigen::MatrixXd v(d, static_cast<Eigen::Index>(unique.size()));
  for (std::size_t c = 0; c < unique.size(); ++c) {
    v.col(static_cast<Eigen::Index>(c)) = vertices.row(unique[c]).transpose();
  }
  const double scale =
      1.0 + std::max(x.lpNorm<Eigen::Infinity>(), v.lpNorm<Eigen::Infinity>());
  return InHull(x, v, scale);
}

namespace internal {

SimplexTuple::SimplexTuple(Matrix vertices) : vertices_(std::move(vertices)) {
  const Eigen::Index d = vertices_.cols();
  Eigen::MatrixXd a(d + 1, d + 1);
  a.topRows(d) = vertices_.transpose();
  a.row(d).setOnes();
  Eigen::FullPivLU<Eigen::MatrixXd> lu(a);
  if (lu.isInvertible() && lu.rcond() > 1e-12) {
    inverse_ = lu.inverse();
    degenerate_ = false;
  }
}

bool SimplexTuple::Contains(const Vector& x) const {
  if (degenerate_) return PointInSimplex(x, vertices_);
  const Eigen::Index d = vertices_.cols();
  Eigen::VectorXd b(d + 1);
  b.head(d) = x;
  b(d) = 1.0;
  return (inverse_ * b).minCoeff() >= -kTol;
}

Matrix TupleVertices(const Dataset& data, const std::size_t* idx) {
  const std::size_t d = data.d();
  Matrix v(static_cast<Eigen::Index>(d + 1), static_cast<Eigen::Index>(d));
  for (std::size_t r = 0; r <= d; ++r) v.row(r) = data.points().row(idx[r]);
  return v;
}

}  // namespace internal

double SimplicialDepthMc(const Vector& x, const Dataset& data,
                         std::size_t trials, RngStream& rng) {
  const std::size_t n = data.n();
  const std::size_t d = data.d();
  if (n < d + 1) {
    throw DataError("simplicial depth needs at least d+1 = " +
                    std::to_string(d + 1) + " rows, got " + std::to_string(n));
  }
  if (trials == 0) throw ConfigError("simplicial depth needs trials >= 1");
  std::vector<std::size_t> idx(d + 1);
  std::size_t inside = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    for (auto& i : idx) i = static_cast<std::size_t>(rng.Below(n));
    if (PointInSimplex(x, internal::TupleVertices(data, idx.data()))) ++inside;
  }
  return static_cast<double>(inside) / static_cast<double>(trials);
}

double SimplicialDepthExact(const Vector& x, const Dataset& data) {
  const std::size_t n = data.n();
  const std::size_t d = data.d();
  if (d == 1) {
    std::size_t le = 0, lt = 0;
    for (std::size_t i = 0; i < n; ++i) {
      le += data.row(i)[0] <= x[0];
      lt += data.row(i)[0] < x[0];
    }
    const double f = static_cast<double>(le) / n;
    const double f_strict = static_cast<double>(lt) / n;
    return 1.0 - f_strict * f_strict - (1.0 - f) * (1.0 - f);
  }
  const double tuples = std::pow(static_cast<double>(n), static_cast<double>(d + 1));
  if (tuples > 5e7) {
    throw DataError("exact simplicial depth would enumerate " +
                    std::to_string(tuples) + " tuples (limit 5e7)");
  }
  const auto total = static_cast<long>(tuples);
  long inside = 0;
#pragma omp parallel for schedule(static) reduction(+ : inside)
  for (long code = 0; code < total; ++code) {
    std::vector<std::size_t> idx(d + 1);
    long rest = code;
    for (auto& i : idx) {
      i = static_cast<std::size_t>(rest % static_cast<long>(n));
      rest /= static_cast<long>(n);
    }
    if (PointInSimplex(x, internal::TupleVertices(data, idx.data()))) ++inside;
  }
  return static_cast<double>(inside) / tuples;
}

}  // namespace dpdepth
