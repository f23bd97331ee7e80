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

// OpenMP kernels behind the depth functions. Every parallel loop writes
// per-direction (or per-fixed-block) partial results that are combined
// serially, so results do not depend on the thread count.

#ifndef DPDEPTH_DEPTH_KERNELS_H_
#define DPDEPTH_DEPTH_KERNELS_H_

#include <cmath>
#include <cstddef>
#include <vector>

#include "dpdepth/core.h"

namespace dpdepth::kernels {

inline double Sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

// sigmoid(z) and sigmoid(-z) = 1 - sigmoid(z), each to full relative precision.
inline void SigmoidPair(double z, double* sig, double* sigc) {
  if (z >= 0.0) {
    const double e = std::exp(-z);
    *sig = 1.0 / (1.0 + e);
    *sigc = e * *sig;
  } else {
    const double e = std::exp(z);
    *sigc = 1.0 / (1.0 + e);
    *sig = e * *sigc;
  }
}

// Projections X_i.u_m of every row onto every direction, sorted within each
// direction.
class ProjectionIndex {
 public:
  ProjectionIndex(const Dataset& data, const DirectionSet& dirs);

  std::size_t n() const { return n_; }
  std::size_t directions() const { return dirs_.size(); }
  const DirectionSet& dirs() const { return dirs_; }

  // Sorted projections onto direction m.
  const double* sorted(std::size_t m) const { return proj_.data() + m * n_; }

  // x.u_m for every m.
  void Project(const Vector& x, std::vector<double>* out) const;

  // #{i : X_i.u_m <= t} and #{i : X_i.u_m < t}.
  std::size_t CountLessEqual(std::size_t m, double t) const;
  std::size_t CountLess(std::size_t m, double t) const;

 private:
  std::size_t n_;
  DirectionSet dirs_;
  std::vector<double> proj_;
};

// Per-direction CDF values F(x, u_m) and F(x-, u_m) at projected point t_m.
void DirectionalCdfs(const ProjectionIndex& index, const std::vector<double>& t,
                     std::vector<double>* cdf, std::vector<double>* cdf_strict);

double Halfspace(const ProjectionIndex& index, const Vector& x);
double IntegratedRankWeighted(const ProjectionIndex& index, const Vector& x);
double IntegratedDual(const ProjectionIndex& index, const Vector& x);

// Smoothed integrated dual depth; fills `gradient` when non-null.
double SmoothedIntegratedDual(const ProjectionIndex& index, const Vector& x,
                              double s, Vector* gradient);

// (1/n) sum_i sign(x - X_i), sign(0) = 0.
Vector MeanSpatialSign(const Dataset& data, const Vector& x);

// Number of rows of `x_points` handled per OpenMP task in batch evaluation.
inline constexpr std::size_t kBlock = 256;

}  // namespace dpdepth::kernels

#endif  // DPDEPTH_DEPTH_KERNELS_H_
