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

#include "dpdepth/depth_reference.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "dpdepth/depth.h"

namespace dpdepth::reference {
namespace {

double Sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

// (1/n) sum_i sigmoid(s (x - X_i).u), evaluated literally; the complement
// (1/n) sum_i sigmoid(-s (x - X_i).u) goes to `complement`.
double SmoothedCdf(const Vector& x, const double* u, const Dataset& data,
                   double s, double* complement, double* derivative_sum) {
  const std::size_t d = data.d();
  double g = 0.0, gc = 0.0, dg = 0.0;
  for (std::size_t i = 0; i < data.n(); ++i) {
    double z = 0.0;
    for (std::size_t j = 0; j < d; ++j) z += (x[j] - data.row(i)[j]) * u[j];
    const double sig = Sigmoid(s * z), sigc = Sigmoid(-s * z);
    g += sig;
    gc += sigc;
    dg += sig * sigc;
  }
  *complement = gc / data.n();
  if (derivative_sum != nullptr) *derivative_sum = dg / data.n();
  return g / data.n();
}

}  // namespace

double DirectionalCdf(const Vector& x, const double* u, const Dataset& data,
                      bool strict) {
  const double xu = Dot(x.data(), u, data.d());
  std::size_t count = 0;
  for (std::size_t i = 0; i < data.n(); ++i) {
    const double xiu = Dot(data.row(i), u, data.d());
    if (strict ? xiu < xu : xiu <= xu) ++count;
  }
  return static_cast<double>(count) / data.n();
}

double Halfspace(const Vector& x, const Dataset& data, const DirectionSet& dirs) {
  double depth = std::numeric_limits<double>::infinity();
  for (std::size_t m = 0; m < dirs.size(); ++m) {
    depth = std::min(depth, DirectionalCdf(x, dirs.row(m), data, false));
  }
  return depth;
}

double IntegratedRankWeighted(const Vector& x, const Dataset& data,
                              const DirectionSet& dirs) {
  double sum = 0.0;
  for (std::size_t m = 0; m < dirs.size(); ++m) {
    const double f = DirectionalCdf(x, dirs.row(m), data, false);
    const double f_strict = DirectionalCdf(x, dirs.row(m), data, true);
    sum += std::min(f, 1.0 - f_strict);
  }
  return 2.0 * sum / dirs.size();
}

double IntegratedDual(const Vector& x, const Dataset& data,
                      const DirectionSet& dirs) {
  double sum = 0.0;
  for (std::size_t m = 0; m < dirs.size(); ++m) {
    const double f = DirectionalCdf(x, dirs.row(m), data, false);
    sum += f * (1.0 - f);
  }
  return sum / dirs.size();
}

double SmoothedIntegratedDual(const Vector& x, const Dataset& data,
                              const DirectionSet& dirs, double s) {
  double sum = 0.0;
  for (std::size_t m = 0; m < dirs.size(); ++m) {
    double gc = 0.0;
    const double g = SmoothedCdf(x, dirs.row(m), data, s, &gc, nullptr);
    sum += g * gc;
  }
  return sum / dirs.size();
}

Vector SmoothedIntegratedDualGradient(const Vector& x, const Dataset& data,
                                      const DirectionSet& dirs, double s) {
  Vector grad = Vector::Zero(x.size());
  for (std::size_t m = 0; m < dirs.size(); ++m) {
    double dg = 0.0;
    double gc = 0.0;
    const double g = SmoothedCdf(x, dirs.row(m), data, s, &gc, &dg);
    const double w = (gc - g) * s * dg;
    for (std::size_t j = 0; j < data.d(); ++j) grad[j] += w * dirs.row(m)[j];
  }
  return grad / static_cast<double>(dirs.size());
}

double Spatial(const Vector& x, const Dataset& data) {
  Vector mean = Vector::Zero(x.size());
  for (std::size_t i = 0; i < data.n(); ++i) {
    const Vector diff = x - data.points().row(i).transpose();
    const double norm = diff.norm();
    if (norm > 0.0) mean += diff / norm;
  }
  return 1.0 - (mean / static_cast<double>(data.n())).norm();
}

double ModifiedSpatial(const Vector& x, const Dataset& data) {
  const double r = 1.0 - Spatial(x, data);
  return 1.0 - r * r;
}

double SimplicialEnumerated(const Vector& x, const Dataset& data) {
  const std::size_t n = data.n();
  const std::size_t k = data.d() + 1;
  std::vector<std::size_t> idx(k, 0);
  Matrix vertices(k, data.d());
  std::size_t inside = 0, total = 0;
  while (true) {
    for (std::size_t r = 0; r < k; ++r) {
      vertices.row(r) = data.points().row(idx[r]);
    }
    if (PointInSimplex(x, vertices)) ++inside;
    ++total;
    std::size_t pos = 0;
    while (pos < k && ++idx[pos] == n) idx[pos++] = 0;
    if (pos == k) break;
  }
  return static_cast<double>(inside) / total;
}

}  // namespace dpdepth::reference
