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

#include "dpdepth/harness.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include <gtest/gtest.h>

namespace dpdepth {
namespace {

double Quantile(std::vector<double> v, double q) {
  std::sort(v.begin(), v.end());
  return v[static_cast<std::size_t>(q * (v.size() - 1))];
}

std::vector<double> Column(const Dataset& data, std::size_t j) {
  std::vector<double> c(data.n());
  for (std::size_t i = 0; i < data.n(); ++i) c[i] = data.points()(i, j);
  return c;
}

TEST(GenGaussian, MomentsAndDeterminism) {
  RngStream rng(1, 1);
  const Dataset data = GenGaussian(100000, 2, Vector::Zero(2), 1.0, rng);
  const Vector mean = data.points().colwise().mean().transpose();
  EXPECT_LT(std::abs(mean[0]), 0.02);
  EXPECT_LT(std::abs(mean[1]), 0.02);
  RngStream one(2, 2);
  const Dataset single = GenGaussian(1, 3, Vector::Ones(3), 2.0, one);
  EXPECT_EQ(single.n(), 1u);
  EXPECT_TRUE(single.points().allFinite());
  RngStream a(3, 3), b(3, 3);
  EXPECT_EQ(GenGaussian(50, 4, Vector::Zero(4), 1.0, a).points(),
            GenGaussian(50, 4, Vector::Zero(4), 1.0, b).points());
}

TEST(GenContaminated, CountAndMean) {
  RngStream rng(4, 4);
  const Dataset far = GenContaminated(1000, 2, 0.25, Vector::Constant(2, 1e6), rng);
  const auto shifted = (far.points().col(0).array() > 1e5).count();
  EXPECT_EQ(shifted, 250);
  // Shifted rows are spread through the sample, not stacked at one end.
  EXPECT_GT((far.points().topRows(500).col(0).array() > 1e5).count(), 50);
  EXPECT_GT((far.points().bottomRows(500).col(0).array() > 1e5).count(), 50);

  const Dataset mix = GenContaminated(20000, 2, 0.25, Vector::Constant(2, 5.0), rng);
  const Vector mean = mix.points().colwise().mean().transpose();
  // Mixture variance per coordinate: 1 + f (1 - f) 25.
  const double se = std::sqrt((1 + 0.25 * 0.75 * 25) / 20000.0);
  EXPECT_NEAR(mean[0], 1.25, 3 * se);
  EXPECT_NEAR(mean[1], 1.25, 3 * se);
  const Dataset clean = GenContaminated(1000, 2, 0.0, Vector::Constant(2, 1e6), rng);
  EXPECT_LT(clean.points().cwiseAbs().maxCoeff(), 10.0);
}

TEST(GenCauchyMarginals, MediansQuartilesDeterminism) {
  RngStream rng(5, 5);
  const Dataset data = GenCauchyMarginals(10000, 2, Vector(Eigen::Vector2d(1.0, 2.0)), rng);
  const auto c0 = Column(data, 0), c1 = Column(data, 1);
  EXPECT_LT(std::abs(Quantile(c0, 0.5)), 0.1);
  EXPECT_LT(std::abs(Quantile(c1, 0.5)), 0.1);
  const double iqr0 = Quantile(c0, 0.75) - Quantile(c0, 0.25);
  const double iqr1 = Quantile(c1, 0.75) - Quantile(c1, 0.25);
  EXPECT_NEAR(iqr0, 2.0, 0.1);  // standard Cauchy IQR is 2
  EXPECT_NEAR(iqr1 / iqr0, 2.0, 0.15);
  RngStream a(6, 6), b(6, 6);
  EXPECT_EQ(GenCauchyMarginals(30, 3, Vector::Ones(3), a).points(),
            GenCauchyMarginals(30, 3, Vector::Ones(3), b).points());
}

ExperimentConfig Small() {
  ExperimentConfig cfg;
  cfg.dims = {2};
  cfg.n = 2000;
  cfg.replications = 4;
  cfg.directions = 50;
  cfg.burn_in = 200;
  cfg.tune_rounds = 6;
  cfg.tune_window = 30;
  return cfg;
}

TEST(RunExperiment, SingleRow) {
  ExperimentConfig cfg = Small();
  cfg.replications = 1;
  cfg.estimators = {Estimator::kSampleMean};
  const ResultTable t = RunExperiment(cfg);
  ASSERT_EQ(t.rows.size(), 1u);
  EXPECT_EQ(t.rows[0].d, 2u);
  EXPECT_EQ(t.rows[0].estimator, "sample_mean");
  EXPECT_EQ(t.rows[0].reps, 1u);
  EXPECT_EQ(t.rows[0].seed, cfg.seed);
  EXPECT_GE(t.rows[0].ermse, 0.0);
  EXPECT_EQ(t.cells.size(), 1u);
  EXPECT_TRUE(t.diagnostics.empty());
}

TEST(RunExperiment, ContaminationBiasesMeanNotMedian) {
  ExperimentConfig cfg = Small();
  cfg.contamination = 0.25;
  cfg.estimators = {Estimator::kSampleMean, Estimator::kNonprivateMedian};
  const ResultTable t = RunExperiment(cfg);
  ASSERT_EQ(t.rows.size(), 2u);
  EXPECT_NEAR(t.rows[0].ermse, 1.25 * std::sqrt(2.0), 0.1);
  // Population integrated dual median of 0.75 N(0, I) + 0.25 N((5, 5), I)
  // is a (1, 1) with a = 0.3919 (quadrature over 2e4 angles), so its norm
  // is 0.5542.
  EXPECT_NEAR(t.rows[1].ermse, 0.5542, 0.06);
  EXPECT_LT(t.rows[1].ermse, 0.5 * t.rows[0].ermse);
}

TEST(RunExperiment, DeterministicAndIndependentOfEstimatorSet) {
  ExperimentConfig cfg = Small();
  cfg.dims = {2, 3};
  cfg.replications = 2;
  cfg.contamination = 0.1;
  const ResultTable a = RunExperiment(cfg);
  const ResultTable b = RunExperiment(cfg);
  ASSERT_EQ(a.rows.size(), 8u);
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    ResultRow ra = a.rows[i], rb = b.rows[i];
    ra.wall_ms = rb.wall_ms = 0;
    EXPECT_EQ(ra, rb);
  }
  for (std::size_t i = 0; i < a.cells.size(); ++i) {
    EXPECT_EQ(a.cells[i].error, b.cells[i].error);
  }
  cfg.estimators = {Estimator::kPrivateMedian};
  const ResultTable only = RunExperiment(cfg);
  EXPECT_EQ(only.rows[0].ermse, a.rows[0].ermse);
  EXPECT_EQ(only.rows[1].ermse, a.rows[4].ermse);
}

TEST(RunExperiment, InvalidConfig) {
  ExperimentConfig cfg = Small();
  cfg.contamination = 1.0;
  EXPECT_THROW(RunExperiment(cfg), ConfigError);
  cfg = Small();
  cfg.replications = 0;
  EXPECT_THROW(cfg.Validate(), ConfigError);
  cfg = Small();
  cfg.dims = {};
  EXPECT_THROW(cfg.Validate(), ConfigError);
}

TEST(Figure1Data, OneDimensionAndOrdering) {
  const std::vector<Figure1Row> rows = Figure1Data({1, 2, 5}, 1.0, 2000, 32, 1);
  ASSERT_EQ(rows.size(), 9u);
  EXPECT_EQ(rows[0].d, 1u);
  EXPECT_EQ(rows[0].depth, "hd");
  EXPECT_NEAR(rows[0].log_inv_alpha, std::log(4.0), 1e-12);
  for (const char* kind : {"hd", "irw", "idd"}) {
    double prev = -1;
    for (const Figure1Row& r : rows) {
      if (r.depth != kind) continue;
      EXPECT_GT(r.log_inv_alpha, prev) << kind << " d=" << r.d;
      EXPECT_NEAR(r.log_inv_alpha, std::log(1.0 / r.alpha), 1e-12);
      prev = r.log_inv_alpha;
    }
  }
}

ResultTable SampleTable() {
  ResultTable t;
  t.rows.push_back({2, "sample_mean", 1.767766953, 20, 12.5, 7});
  t.rows.push_back({5, "private_median", 0.1234567891, 19, 1e-3, 7});
  t.rows.push_back({20, "clipped_mean", std::nan(""), 0, 0.0, 7});
  return t;
}

bool SameRows(const std::vector<ResultRow>& a, const std::vector<ResultRow>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const bool nan_ok = std::isnan(a[i].ermse) && std::isnan(b[i].ermse);
    ResultRow x = a[i], y = b[i];
    if (nan_ok) x.ermse = y.ermse = 0;
    if (!(x == y)) return false;
  }
  return true;
}

TEST(Results, EmptyTableIsHeaderOnly) {
  EXPECT_EQ(FormatResults(ResultTable{}, ResultFormat::kCsv),
            "d,estimator,ermse,reps,wall_ms,seed\n");
  EXPECT_TRUE(ParseResults(FormatResults(ResultTable{}, ResultFormat::kJson),
                           ResultFormat::kJson)
                  .empty());
}

TEST(Results, CsvAndJsonRoundTrip) {
  const ResultTable t = SampleTable();
  for (ResultFormat f : {ResultFormat::kCsv, ResultFormat::kJson}) {
    const std::string path = ::testing::TempDir() + "harness_roundtrip";
    WriteResults(t, path, f);
    EXPECT_TRUE(SameRows(ReadResults(path, f), t.rows));
    std::remove(path.c_str());
  }
  const std::string csv = FormatResults(t, ResultFormat::kCsv);
  EXPECT_NE(csv.find("2,sample_mean,1.767766953,20,12.5,7\n"), std::string::npos);
  const std::string json = FormatResults(t, ResultFormat::kJson);
  for (const char* field : {"\"d\"", "\"estimator\"", "\"ermse\"", "\"reps\"",
                            "\"wall_ms\"", "\"seed\""}) {
    EXPECT_NE(json.find(field), std::string::npos) << field;
  }
  EXPECT_TRUE(SameRows(ParseResults(json, ResultFormat::kJson),
                       ParseResults(csv, ResultFormat::kCsv)));
}

TEST(Results, WriteFailureSurfaces) {
  EXPECT_THROW(WriteResults(SampleTable(), "/nonexistent-dir/x.csv", ResultFormat::kCsv),
               std::runtime_error);
  EXPECT_THROW(ParseResults("d,estimator\n1,x\n", ResultFormat::kCsv), ParseError);
}

TEST(FormatReal, TenSignificantDigits) {
  EXPECT_EQ(FormatReal(1.0), "1");
  EXPECT_EQ(FormatReal(1.0 / 3.0), "0.3333333333");
  EXPECT_EQ(FormatReal(123456789012.0), "1.23456789e+11");
}

TEST(ExperimentConfigText, ParseFormatRoundTrip) {
  const ExperimentConfig cfg = ParseExperimentConfig(
      "# desk run\n"
      "dims = 2, 5\n"
      "n = 500\n"
      "replications = 3\n"
      "contamination = 0.25  # fraction\n"
      "shift = 4\n"
      "estimators = sample_mean, private_median\n"
      "epsilon = 2\n"
      "s = 5\n"
      "prior_variance_per_dim = 9\n"
      "directions = 40\n"
      "sampler = rwm\n"
      "burn_in = 100\n"
      "tune_rounds = 3\n"
      "tune_window = 20\n"
      "clip_radius_per_sqrt_d = 4\n"
      "median_steps = 50\n"
      "seed = 99\n");
  EXPECT_EQ(cfg.dims, (std::vector<std::size_t>{2, 5}));
  EXPECT_EQ(cfg.n, 500u);
  EXPECT_EQ(cfg.contamination, 0.25);
  EXPECT_EQ(cfg.estimators.size(), 2u);
  EXPECT_EQ(cfg.estimators[1], Estimator::kPrivateMedian);
  EXPECT_EQ(cfg.sampler, SamplerKind::kRwm);
  EXPECT_EQ(cfg.seed, 99u);
  const ExperimentConfig again = ParseExperimentConfig(FormatExperimentConfig(cfg));
  EXPECT_EQ(FormatExperimentConfig(again), FormatExperimentConfig(cfg));
  EXPECT_EQ(again.median_steps, 50u);
  EXPECT_EQ(again.clip_radius_per_sqrt_d, 4.0);
}

TEST(ExperimentConfigText, Errors) {
  EXPECT_THROW(ParseExperimentConfig("colour = red\n"), ParseError);
  EXPECT_THROW(ParseExperimentConfig("n 5\n"), ParseError);
  EXPECT_THROW(ParseExperimentConfig("n = five\n"), ParseError);
  EXPECT_THROW(ParseExperimentConfig("estimators = median\n"), ParseError);
  EXPECT_THROW(LoadExperimentConfig("/nonexistent/cfg.txt"), std::runtime_error);
}

}  // namespace
}  // namespace dpdepth
