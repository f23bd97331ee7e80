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

// Analytical quantities behind the accuracy guarantees of the depth-based
// exponential mechanism: the discrepancy function α(t) for a few population
// models, the prior rate function I(t), the calibration ψ(λ), the
// concentration bound, sample-complexity formulas and the direction budget.
//
// The universal constants (c1, c2, C, c) are unknown; they default to 1 and
// every output is "up to universal constants".

#ifndef DPDEPTH_THEORY_H_
#define DPDEPTH_THEORY_H_

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "dpdepth/core.h"
#include "dpdepth/depth.h"
#include "dpdepth/mechanisms.h"
#include "dpdepth/rng.h"

namespace dpdepth {

double NormalCdf(double z);
double CauchyCdf(double z);

// N(θ0, Σ) with Σ = diag(eigenvalues) in its eigenbasis, eigenvalues sorted
// in decreasing order, so the top eigenvector v1 is the first axis.
struct GaussianModel {
  Vector eigenvalues;
  explicit GaussianModel(Vector eigenvalues);
};

// X.u equal in law to a(u) Z for a symmetric Z with CDF `cdf`.
struct DVersionModel {
  std::function<double(const double* u, std::size_t d)> scale;
  std::function<double(double)> cdf;

  // Independent Cauchy(0, σ_j) coordinates: a(u) = sum_j σ_j |u_j|.
  static DVersionModel CauchyMarginals(Vector scales);
};

// kind must be kHalfspace, kIntegratedRankWeighted or kIntegratedDual.
// Halfspace is the closed form Φ(t/sqrt(λ1)) - 1/2; the others average their
// integrands over `dirs`. Throws ConfigError for t < 0.
double AlphaGaussian(DepthType kind, double t, const GaussianModel& model,
                     const DirectionSet& dirs);

// sup/inf over v range over `vgrid`; integrals over the sphere average over
// `dirs`. For halfspace depth the inner sup over u ranges over dirs, the
// signed coordinate axes and ±v.
double AlphaDVersion(DepthType kind, double t, const DVersionModel& model,
                     const DirectionSet& dirs, const DirectionSet& vgrid);

// (1/π) atan(t / (sqrt(d) σ̄)).
double AlphaCauchyHdClosedForm(double t, std::size_t d, double sigma_bar);

// `random_count` uniform directions, then the coordinate axes, the normalized
// diagonal and each vector of `extra` (normalized).
DirectionSet MakeVGrid(std::size_t d, std::size_t random_count, RngStream& rng,
                       const std::vector<Vector>& extra = {});

// Upper bound on -log π(B_r(E)), E given as rows of `points`.
//   Gaussian: C [dist(E, θp)^2 / σp^2 + d log(σp/r ∨ d)], needs σp >= 1/4,
//             d > 2 and r <= σp.
//   Cube:     C d log(R / (d_R(E) ∧ r)), with d_R the distance to the
//             nearest face of the cube.
// Throws ConfigError when a precondition fails.
double LogPriorBall(const PriorSpec& prior, const Matrix& points, double r,
                    double C = 1.0);

// Minimum over rows of |x_i - θp_i ± R/2|.
double CubeFaceDistance(const PriorSpec& prior, const Matrix& points);
// Minimum over rows of ||x - θp||.
double DistanceToCenter(const PriorSpec& prior, const Matrix& points);

// min over r of [λ L r + LogPriorBall(r)], r on a 64-point log grid (plus
// `extra_r` when given).
double Psi(double lambda, double L, const PriorSpec& prior, const Matrix& points,
           std::optional<double> extra_r = std::nullopt, double C = 1.0);

struct RateEstimate {
  double value = 0.0;
  // Set when no sample fell outside the ball; then I(t) >= value = log(samples).
  bool lower_bound = false;
};

// Monte Carlo -log π({x : dist(x, E) > t}) from direct prior sampling.
RateEstimate RateFunctionMc(const PriorSpec& prior, const Matrix& points,
                            double t, std::size_t samples, RngStream& rng);

struct BoundInputs {
  double n = 1000.0;
  double d = 2.0;
  double epsilon = 1.0;
  double gamma = 0.05;
  double K = 1.0;
  double vc = 4.0;
  double L = 1.0;
  double c1 = 1.0;
  double c2 = 1.0;
  double C = 1.0;
  double c = 1.0;
};

// (c1 n/vc)^vc exp(-c2 n [I/(nε) ∨ α/(2K)]^2) + exp(-nεα/(4K) - I/2 + ψ),
// clamped to [0, 1]; evaluated in the log domain.
double ConcentrationBound(const BoundInputs& in, double alpha_t, double rate_t,
                          double psi);

enum class PriorFamily { kGaussian, kCube };

struct PriorGeometry {
  double center_distance = 0.0;  // dist(E, θp), Gaussian prior
  double sigma = 1.0;            // σp, Gaussian prior
  double side = 1.0;             // R, cube prior
  double face_distance = 0.5;    // d_R(E), cube prior
};

struct SampleComplexity {
  double statistical = 0.0;  // first branch, before the C K^2 factor
  double privacy = 0.0;      // second branch, before the C K^2 factor
  double bound = 0.0;        // C K^2 max(statistical, privacy)
  double n = 0.0;            // ceil(bound)
};

// Sufficient sample size for accuracy t with probability 1 - γ under a
// Gaussian or cube prior. Throws ConfigError when α(t) <= 0.
SampleComplexity ComputeSampleComplexity(PriorFamily family,
                                         const BoundInputs& in, double alpha_t,
                                         const PriorGeometry& geometry);

// ceil(c1 max(log(1/γ), d n log(max(1/t, e))) / t^2).
double DirectionBudget(double t, double gamma, std::size_t d, std::size_t n,
                       double c1 = 1.0);

}  // namespace dpdepth

#endif  // DPDEPTH_THEORY_H_
