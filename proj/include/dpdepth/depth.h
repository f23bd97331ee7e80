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

// Depth functions of a point with respect to the empirical measure of a
// dataset.
//
// Projection depths (halfspace, integrated dual, integrated rank-weighted and
// the smoothed integrated dual depth) integrate or minimize over the unit
// sphere; here the sphere is replaced by a DirectionSet. With d = 1 and the
// direction set {+1, -1} they are exact. Halfspace depth over a finite
// direction set is an upper bound on the exact empirical halfspace depth.
//
// For a point x, direction u and dataset X_1..X_n:
//   F(x, u)  = #{i : X_i.u <= x.u} / n
//   F(x-, u) = #{i : X_i.u <  x.u} / n

#ifndef DPDEPTH_DEPTH_H_
#define DPDEPTH_DEPTH_H_

#include <cstddef>
#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dpdepth/core.h"
#include "dpdepth/rng.h"

namespace dpdepth {

enum class DepthType {
  kHalfspace,               // hd
  kSimplicial,              // smd
  kSpatial,                 // sd
  kModifiedSpatial,         // msd
  kIntegratedDual,          // idd
  kIntegratedRankWeighted,  // irw
  kSmoothedIntegratedDual,  // sidd
};

// A depth function plus its smoothing parameter. `smoothing` is only
// meaningful for kSmoothedIntegratedDual and must be positive; an infinite
// value is the unsmoothed integrated dual depth.
struct DepthKind {
  DepthType type = DepthType::kHalfspace;
  double smoothing = std::numeric_limits<double>::infinity();

  static DepthKind Halfspace() { return {DepthType::kHalfspace}; }
  static DepthKind Simplicial() { return {DepthType::kSimplicial}; }
  static DepthKind Spatial() { return {DepthType::kSpatial}; }
  static DepthKind ModifiedSpatial() { return {DepthType::kModifiedSpatial}; }
  static DepthKind IntegratedDual() { return {DepthType::kIntegratedDual}; }
  static DepthKind IntegratedRankWeighted() {
    return {DepthType::kIntegratedRankWeighted};
  }
  // Throws ConfigError unless s > 0.
  static DepthKind SmoothedIntegratedDual(double s);

  // "hd", "smd", "sd", "msd", "idd", "irw", "sidd". For sidd the smoothing
  // parameter is passed separately.
  static DepthKind Parse(std::string_view name, double smoothing = 10.0);
  std::string Name() const;

  bool UsesDirections() const;
  bool Differentiable() const {
    return type == DepthType::kSmoothedIntegratedDual;
  }
};

// Concrete stand-ins for the O(.) VC bounds; overridable.
struct VcRule {
  double spatial_c = 3.0;     // SD: c * d
  double simplicial_c = 2.0;  // SMD: c * d^2 * log(d + 2)
};

// Regularity constants of a depth function.
struct DepthConstants {
  // Lipschitz constant in the measure argument under the F-pseudometric; the
  // global sensitivity over datasets of size n is at most K / n.
  double K = 1.0;
  // Multiplier used for privacy calibration: max(K, proven sup change * n).
  // Equals K except for the spatial depths, whose tabulated K is too small
  // (see DepthConstants docs in README).
  double privacy_k = 1.0;
  // Concrete VC-dimension bound used by the sample-complexity calculators.
  double vc = 3.0;
  std::string vc_class;        // "O(d)" or "O(d^2 log d)"
  std::string lipschitz_form;  // Lipschitz constant of x -> D(x, mu)
  std::string admissible;      // admissible set of measures
};

DepthConstants GetDepthConstants(DepthKind kind, std::size_t d,
                                 const VcRule& rule = {});

// Fraction of rows with X_i.u <= x.u (strict = false) or < (strict = true).
double DirectionalCdf(const Vector& x, const Vector& u, const Dataset& data,
                      bool strict);

// min over directions of F(x, u).
double HalfspaceDepth(const Vector& x, const Dataset& data,
                      const DirectionSet& dirs);
// Exact d = 1 halfspace depth, min(F(x), 1 - F(x-)).
double HalfspaceDepth1d(double x, const Dataset& data);

// (2/M) sum_m min(F(x, u_m), 1 - F(x-, u_m)). At an atom both terms can be
// close to 1, so values up to 1 + (largest projected atom mass) occur.
double IrwDepth(const Vector& x, const Dataset& data, const DirectionSet& dirs);

// (1/M) sum_m F(x, u_m) (1 - F(x, u_m)), in [0, 1/4].
double IddDepth(const Vector& x, const Dataset& data, const DirectionSet& dirs);

// (1/M) sum_m G_m (1 - G_m), G_m = (1/n) sum_i sigmoid(s (x - X_i).u_m).
double SiddDepth(const Vector& x, const Dataset& data, const DirectionSet& dirs,
                 double s);
// Gradient of SiddDepth in x.
Vector SiddGradient(const Vector& x, const Dataset& data,
                    const DirectionSet& dirs, double s);

// 1 - |(1/n) sum_i sign(x - X_i)| with sign(0) = 0.
double SpatialDepth(const Vector& x, const Dataset& data);
// 1 - |(1/n) sum_i sign(x - X_i)|^2.
double ModifiedSpatialDepth(const Vector& x, const Dataset& data);

// Monte Carlo simplicial depth: fraction of `trials` simplices, each spanned
// by d+1 rows drawn uniformly with replacement, that contain x. Throws
// DataError if n < d + 1.
double SimplicialDepthMc(const Vector& x, const Dataset& data,
                         std::size_t trials, RngStream& rng);
// Exact simplicial depth of the empirical measure (vertices i.i.d. from it):
// closed form for d = 1, enumeration of all n^(d+1) ordered tuples otherwise.
// Throws DataError when the enumeration would exceed 5e7 tuples.
double SimplicialDepthExact(const Vector& x, const Dataset& data);

// Whether x lies in the closed simplex spanned by the rows of `vertices`
// ((d+1) x d). Tolerance 1e-10 on barycentric coordinates and on the affine
// residual; degenerate simplices are handled through their affinely
// independent vertex subsets.
bool PointInSimplex(const Vector& x, const Matrix& vertices);

// Depth of many points against one dataset. Precomputes sorted projections
// (projection depths) or simplex tuples (simplicial depth) once, so repeated
// evaluation inside a sampler is cheap. The simplicial tuple set is drawn from
// `simplicial_seed` and held fixed, which makes the evaluator a deterministic
// function of x.
class DepthEvaluator {
 public:
  struct Options {
    // Required for projection depths when d >= 2; in d = 1 the exact {+1, -1}
    // set is used when absent.
    std::optional<DirectionSet> directions;
    std::size_t simplicial_trials = 2000;
    std::uint64_t simplicial_seed = 0;
  };

  DepthEvaluator(DepthKind kind, const Dataset& data, Options options);
  ~DepthEvaluator();
  DepthEvaluator(DepthEvaluator&&) noexcept;
  DepthEvaluator& operator=(DepthEvaluator&&) noexcept;

  double Value(const Vector& x) const;
  // Only for differentiable kinds; throws ConfigError otherwise.
  Vector Gradient(const Vector& x) const;
  double ValueAndGradient(const Vector& x, Vector* gradient) const;
  // Rows of `points` evaluated in parallel.
  std::vector<double> Values(const Matrix& points) const;

  DepthKind kind() const { return kind_; }
  std::size_t n() const;
  std::size_t d() const;

 private:
  struct Impl;
  DepthKind kind_;
  std::unique_ptr<Impl> impl_;
};

}  // namespace dpdepth

#endif  // DPDEPTH_DEPTH_H_
