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

// Simulation harness: synthetic data, location-estimation experiments scored
// by empirical root mean squared error (ERMSE) about the origin, and the
// discrepancy table for Cauchy marginals.

#ifndef DPDEPTH_HARNESS_H_
#define DPDEPTH_HARNESS_H_

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "dpdepth/core.h"
#include "dpdepth/depth.h"
#include "dpdepth/mechanisms.h"
#include "dpdepth/rng.h"

namespace dpdepth {

// n rows of N(mean, scale^2 I).
Dataset GenGaussian(std::size_t n, std::size_t d, const Vector& mean,
                    double scale, RngStream& rng);
// floor(fraction n) rows from N(shift, I), the rest from N(0, I), shuffled.
Dataset GenContaminated(std::size_t n, std::size_t d, double fraction,
                        const Vector& shift, RngStream& rng);
// Independent Cauchy(0, scales_j) coordinates.
Dataset GenCauchyMarginals(std::size_t n, std::size_t d, const Vector& scales,
                           RngStream& rng);

enum class Estimator { kPrivateMedian, kNonprivateMedian, kClippedMean, kSampleMean };

std::string EstimatorName(Estimator e);
Estimator ParseEstimator(const std::string& name);

struct ExperimentConfig {
  std::vector<std::size_t> dims = {2, 5, 10, 20};
  std::size_t n = 2000;
  std::size_t replications = 20;
  double contamination = 0.0;  // fraction in [0, 1)
  double shift = 5.0;          // contaminated rows have mean (shift, ..., shift)
  std::vector<Estimator> estimators = {Estimator::kPrivateMedian,
                                       Estimator::kNonprivateMedian,
                                       Estimator::kClippedMean,
                                       Estimator::kSampleMean};
  double epsilon = 10.0;
  double s = 10.0;
  double prior_variance_per_dim = 25.0;  // σp^2 = prior_variance_per_dim * d
  std::size_t directions = 100;
  SamplerKind sampler = SamplerKind::kMala;
  std::size_t burn_in = 600;
  std::size_t tune_rounds = 12;
  std::size_t tune_window = 50;
  double clip_radius_per_sqrt_d = 10.0;  // radius = this * sqrt(d)
  std::size_t median_steps = 200;
  std::uint64_t seed = 1;

  // Throws ConfigError on an invalid combination.
  void Validate() const;
};

struct ResultRow {
  std::size_t d = 0;
  std::string estimator;
  double ermse = 0.0;
  std::size_t reps = 0;  // successful replications
  double wall_ms = 0.0;  // summed over replications
  std::uint64_t seed = 0;

  bool operator==(const ResultRow&) const = default;
};

// Per-replication error of one estimator; kept in memory only.
struct CellError {
  std::size_t d = 0;
  std::size_t replication = 0;
  std::string estimator;
  double error = 0.0;
};

struct ResultTable {
  std::vector<ResultRow> rows;
  std::vector<CellError> cells;
  std::vector<std::string> diagnostics;  // failed estimator runs
};

// For every (d, replication): draw data, run each estimator and record
// ||estimate|| (the clean center is the origin). Cells run in parallel; each
// (d, replication, estimator) has its own stream, so the table does not
// depend on scheduling.
ResultTable RunExperiment(const ExperimentConfig& cfg);

struct Figure1Row {
  std::size_t d = 0;
  std::string depth;
  double alpha = 0.0;
  double log_inv_alpha = 0.0;
};

// log(1/α(t)) under independent standard Cauchy marginals for hd, irw and
// idd, with `directions` sphere directions and `vgrid_random` random
// candidates for the extremal v (plus axes and the diagonal).
std::vector<Figure1Row> Figure1Data(const std::vector<std::size_t>& dims,
                                    double t = 1.0, std::size_t directions = 10000,
                                    std::size_t vgrid_random = 256,
                                    std::uint64_t seed = 1);

enum class ResultFormat { kCsv, kJson };

// CSV header "d,estimator,ermse,reps,wall_ms,seed"; reals with 10 significant
// digits. JSON is an array of objects with the same fields.
std::string FormatResults(const ResultTable& table, ResultFormat format);
void WriteResults(const ResultTable& table, const std::string& path,
                  ResultFormat format);
std::vector<ResultRow> ParseResults(const std::string& text, ResultFormat format);
std::vector<ResultRow> ReadResults(const std::string& path, ResultFormat format);

// Flat "key = value" document; '#' starts a comment. Keys are the field names
// of ExperimentConfig; lists are comma-separated. Unknown keys throw
// ParseError.
ExperimentConfig ParseExperimentConfig(const std::string& text);
ExperimentConfig LoadExperimentConfig(const std::string& path);
std::string FormatExperimentConfig(const ExperimentConfig& cfg);

// Shortest decimal with 10 significant digits.
std::string FormatReal(double x);

}  // namespace dpdepth

#endif  // DPDEPTH_HARNESS_H_
