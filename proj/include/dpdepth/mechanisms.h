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

// The exponential mechanism with a depth utility,
//
//   Q(dθ) ∝ exp(β D(θ, data)) π(dθ),   β = n ε / (2K),
//
// sampled exactly on a grid or approximately by MCMC; the Laplace mechanism
// for depth values; and two non-private or baseline location estimators.

#ifndef DPDEPTH_MECHANISMS_H_
#define DPDEPTH_MECHANISMS_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dpdepth/core.h"
#include "dpdepth/depth.h"
#include "dpdepth/rng.h"

namespace dpdepth {

// Base measure of the mechanism: N(center, sigma^2 I) or the uniform
// distribution on the cube of side `side` centered at `center`.
struct PriorSpec {
  enum class Type { kGaussian, kUniformCube };

  Type type = Type::kGaussian;
  Vector center;
  double scale = 1.0;  // sigma for kGaussian, side R for kUniformCube

  // Throw ConfigError unless scale > 0 and center is finite and nonempty.
  static PriorSpec Gaussian(Vector center, double sigma);
  static PriorSpec UniformCube(Vector center, double side);

  std::size_t d() const { return static_cast<std::size_t>(center.size()); }
  bool InSupport(const Vector& x) const;
  // Log density up to an additive constant; -inf outside the cube.
  double LogDensity(const Vector& x) const;
  // Gaussian only.
  Vector LogDensityGradient(const Vector& x) const;
  Vector Sample(RngStream& rng) const;
  std::string Describe() const;
};

enum class SamplerKind { kExactGrid, kMala, kRwm };

std::string SamplerName(SamplerKind kind);
SamplerKind ParseSampler(const std::string& name);

struct ChainConfig {
  std::size_t burn_in = 2000;
  // Kept states after burn-in, each separated by `thin` steps. The result is
  // the last kept state.
  std::size_t kept = 1;
  std::size_t thin = 1;
  // Proposal scale h. When absent it is tuned before burn-in toward the
  // sampler's target acceptance rate. A present value must be positive.
  std::optional<double> step_size;
  std::size_t tune_rounds = 16;
  std::size_t tune_window = 100;
  // Store every kept state in MechanismResult::trace.
  bool record_trace = false;
};

struct MechanismConfig {
  double epsilon = 1.0;
  DepthKind depth = DepthKind::SmoothedIntegratedDual(10.0);
  PriorSpec prior;
  SamplerKind sampler = SamplerKind::kRwm;
  ChainConfig chain;
  // Directions for projection depths. When absent, `direction_count`
  // directions are sampled from a stream derived from the mechanism's rng.
  std::optional<DirectionSet> directions;
  std::size_t direction_count = 1000;
  std::size_t simplicial_trials = 2000;
};

struct MechanismResult {
  Vector theta;
  double beta = 0.0;
  double epsilon = 0.0;
  double acceptance_rate = 0.0;
  double step_size = 0.0;
  std::size_t chain_length = 0;  // total steps after tuning
  std::uint64_t seed = 0;
  std::uint64_t stream_id = 0;
  std::string sampler;
  std::optional<Matrix> trace;  // kept states, one per row
};

// β = n ε / (2 K'), K' = GetDepthConstants(kind, d).privacy_k.
double BetaFromPrivacy(double epsilon, DepthKind kind, std::size_t n,
                       std::size_t d);
// β = n ε / (2 K).
double BetaFromK(double epsilon, double K, std::size_t n);

struct GridResult {
  std::vector<double> probabilities;
  std::vector<double> log_probabilities;
  std::size_t index = 0;
  double beta = 0.0;
};

// Normalizes exp(β depth_j + log_prior_j) over the grid and draws an index by
// inverse CDF. Throws DataError when every log_prior_j is -inf.
GridResult ExactGridDistribution(const std::vector<double>& depth,
                                 const std::vector<double>& log_prior,
                                 double beta, RngStream& rng);

// Exponential mechanism restricted to the rows of `grid`, with β from
// BetaFromPrivacy.
GridResult ExactGridMechanism(const Matrix& grid, const Dataset& data,
                              const MechanismConfig& cfg, RngStream& rng);

// Builds the depth evaluator the mechanism uses for `cfg`.
DepthEvaluator MakeEvaluator(const Dataset& data, const MechanismConfig& cfg,
                             RngStream& rng);

// Metropolis-adjusted Langevin chain. Needs sidd with finite s and a Gaussian
// prior; throws ConfigError otherwise.
MechanismResult MalaSample(const Dataset& data, const MechanismConfig& cfg,
                           RngStream& rng);
// Gaussian random-walk Metropolis chain; any depth and prior.
MechanismResult RwmSample(const Dataset& data, const MechanismConfig& cfg,
                          RngStream& rng);
// Dispatches on cfg.sampler (mala or rwm).
MechanismResult PrivateMedian(const Dataset& data, const MechanismConfig& cfg,
                              RngStream& rng);

// Chain on β·D(θ) + log π(θ) with an explicit β, started at the prior center.
MechanismResult RunChain(const DepthEvaluator& depth, const PriorSpec& prior,
                         double beta, SamplerKind sampler,
                         const ChainConfig& chain, RngStream& rng);

// D(x) + Laplace(K'/(n ε)) with K' the privacy constant of `kind`. Not
// clamped. `x` must not depend on the data.
double PrivateDepthValue(const Vector& x, const Dataset& data, DepthKind kind,
                         double epsilon, RngStream& rng,
                         std::optional<DirectionSet> directions = std::nullopt);

struct OptimizerOptions {
  std::size_t steps = 200;
  double learning_rate = 1.0;
  std::optional<Vector> init;  // default: coordinate-wise median
  double tolerance = 1e-10;    // stop when the accepted move is shorter
};

// Non-private smoothed integrated dual median by gradient ascent with an
// adaptive step (grown on improvement, halved otherwise).
Vector NonprivateMedian(const Dataset& data, const DirectionSet& dirs, double s,
                        const OptimizerOptions& options = {});

Vector CoordinateMedian(const Dataset& data);
Vector SampleMean(const Dataset& data);

// Rows projected onto the ball of `radius` about the origin, averaged, plus
// i.i.d. Laplace(2 radius d / (n ε)) per coordinate.
Vector ClippedMeanBaseline(const Dataset& data, double radius, double epsilon,
                           RngStream& rng);

}  // namespace dpdepth

#endif  // DPDEPTH_MECHANISMS_H_
