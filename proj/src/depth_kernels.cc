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

#include <algorithm>
#include <cmath>

namespace dpdepth::kernels {

ProjectionIndex::ProjectionIndex(const Dataset& data, const DirectionSet& dirs)
    : n_(data.n()), dirs_(dirs), proj_(data.n() * dirs.size()) {
  if (dirs.d() != data.d()) {
    throw std::invalid_argument("direction dimension does not match data");
  }
  const std::size_t d = data.d();
  const auto M = static_cast<long>(dirs.size());
#pragma omp parallel for schedule(static)
  for (long m = 0; m < M; ++m) {
    double* out = proj_.data() + m * n_;
    const double* u = dirs_.row(m);
    for (std::size_t i = 0; i < n_; ++i) out[i] = Dot(data.row(i), u, d);
    std::sort(out, out + n_);
  }
}

void ProjectionIndex::Project(const Vector& x, std::vector<double>* out) const {
  const std::size_t M = dirs_.size();
  const std::size_t d = dirs_.d();
  out->resize(M);
  for (std::size_t m = 0; m < M; ++m) (*out)[m] = Dot(x.data(), dirs_.row(m), d);
}

std::size_t ProjectionIndex::CountLessEqual(std::size_t m, double t) const {
  const double* p = sorted(m);
  return static_cast<std::size_t>(std::upper_bound(p, p + n_, t) - p);
}

std::size_t ProjectionIndex::CountLess(std::size_t m, double t) const {
  const double* p = sorted(m);
  return static_cast<std::size_t>(std::lower_bound(p, p + n_, t) - p);
}

void DirectionalCdfs(const ProjectionIndex& index, const std::vector<double>& t,
                     std::vector<double>* cdf, std::vector<double>* cdf_strict) {
  const std::size_t M = index.directions();
  const auto n = static_cast<double>(index.n());
  cdf->resize(M);
  if (cdf_strict != nullptr) cdf_strict->resize(M);
  for (std::size_t m = 0; m < M; ++m) {
    (*cdf)[m] = index.CountLessEqual(m, t[m]) / n;
    if (cdf_strict != nullptr) (*cdf_strict)[m] = index.CountLess(m, t[m]) / n;
  }
}

double Halfspace(const ProjectionIndex& index, const Vector& x) {
  std::vector<double> t, cdf;
  index.Project(x, &t);
  DirectionalCdfs(index, t, &cdf, nullptr);
  return *std::min_element(cdf.begin(), cdf.end());
}

double IntegratedRankWeighted(const ProjectionIndex& index, const Vector& x) {
  std::vector<double> t, cdf, cdf_strict;
  index.Project(x, &t);
  DirectionalCdfs(index, t, &cdf, &cdf_strict);
  double sum = 0.0;
  for (std::size_t m = 0; m < cdf.size(); ++m) {
    sum += std::min(cdf[m], 1.0 - cdf_strict[m]);
  }
  return 2.0 * sum / static_cast<double>(cdf.size());
}

double IntegratedDual(const ProjectionIndex& index, const Vector& x) {
  std::vector<double> t, cdf;
  index.Project(x, &t);
  DirectionalCdfs(index, t, &cdf, nullptr);
  double sum = 0.0;
  for (double f : cdf) sum += f * (1.0 - f);
  return sum / static_cast<double>(cdf.size());
}

double SmoothedIntegratedDual(const ProjectionIndex& index, const Vector& x,
                              double s, Vector* gradient) {
  const std::size_t M = index.directions();
  const std::size_t n = index.n();
  const std::size_t d = index.dirs().d();
  std::vector<double> t;
  index.Project(x, &t);
  std::vector<double> value(M), weight(M);
  const bool want_grad = gradient != nullptr;
  const double inv_n = 1.0 / static_cast<double>(n);
#pragma omp parallel for schedule(static)
  for (long m = 0; m < static_cast<long>(M); ++m) {
    const double* p = index.sorted(m);
    const double tm = t[m];
    double g = 0.0, gc = 0.0, dg = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double sig, sigc;
      SigmoidPair(s * (tm - p[i]), &sig, &sigc);
      g += sig;
      gc += sigc;
      dg += sig * sigc;
    }
    g *= inv_n;
    gc *= inv_n;
    value[m] = g * gc;
    if (want_grad) weight[m] = (gc - g) * s * dg * inv_n;
  }
  double total = 0.0;
  for (double v : value) total += v;
  if (want_grad) {
    gradient->setZero(static_cast<Eigen::Index>(d));
    for (std::size_t m = 0; m < M; ++m) {
      const double* u = index.dirs().row(m);
      for (std::size_t j = 0; j < d; ++j) (*gradient)[j] += weight[m] * u[j];
    }
    *gradient /= static_cast<double>(M);
  }
  return total / static_cast<double>(M);
}

Vector MeanSpatialSign(const Dataset& data, const Vector& x) {
  const std::size_t n = data.n();
  const std::size_t d = data.d();
  const std::size_t blocks = (n + kBlock - 1) / kBlock;
  Matrix partial = Matrix::Zero(static_cast<Eigen::Index>(blocks),
                                static_cast<Eigen::Index>(d));
#pragma omp parallel for schedule(static)
  for (long b = 0; b < static_cast<long>(blocks); ++b) {
    std::vector<double> diff(d);
    const std::size_t end = std::min(n, (b + 1) * kBlock);
    for (std::size_t i = b * kBlock; i < end; ++i) {
      const double* xi = data.row(i);
      double norm2 = 0.0;
      for (std::size_t j = 0; j < d; ++j) {
        diff[j] = x[j] - xi[j];
        norm2 += diff[j] * diff[j];
      }
      if (norm2 == 0.0) continue;
      const double inv = 1.0 / std::sqrt(norm2);
      for (std::size_t j = 0; j < d; ++j) partial(b, j) += diff[j] * inv;
    }
  }
  Vector mean = Vector::Zero(static_cast<Eigen::Index>(d));
  for (std::size_t b = 0; b < blocks; ++b) mean += partial.row(b).transpose();
  return mean / static_cast<double>(n);
}

}  // namespace dpdepth::kernels
