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
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>

#include "dpdepth/theory.h"
#include "json.hpp"

namespace dpdepth {
namespace {

using Json = nlohmann::ordered_json;

double Round10(double x) { return std::strtod(FormatReal(x).c_str(), nullptr); }

std::string Trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> SplitComma(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(Trim(item));
  return out;
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Vector EstimateOne(Estimator e, const Dataset& data, const ExperimentConfig& cfg,
                   RngStream& rng) {
  const std::size_t d = data.d();
  switch (e) {
    case Estimator::kSampleMean:
      return SampleMean(data);
    case Estimator::kClippedMean:
      return ClippedMeanBaseline(
          data, cfg.clip_radius_per_sqrt_d * std::sqrt(static_cast<double>(d)),
          cfg.epsilon, rng);
    case Estimator::kNonprivateMedian: {
      const DirectionSet dirs = SampleDirections(d, cfg.directions, rng);
      OptimizerOptions opt;
      opt.steps = cfg.median_steps;
      return NonprivateMedian(data, dirs, cfg.s, opt);
    }
    case Estimator::kPrivateMedian: {
      MechanismConfig mc;
      mc.epsilon = cfg.epsilon;
      mc.depth = DepthKind::SmoothedIntegratedDual(cfg.s);
      mc.prior = PriorSpec::Gaussian(
          Vector::Zero(static_cast<Eigen::Index>(d)),
          std::sqrt(cfg.prior_variance_per_dim * static_cast<double>(d)));
      mc.sampler = cfg.sampler;
      mc.chain.burn_in = cfg.burn_in;
      mc.chain.tune_rounds = cfg.tune_rounds;
      mc.chain.tune_window = cfg.tune_window;
      mc.direction_count = cfg.directions;
      return PrivateMedian(data, mc, rng).theta;
    }
  }
  return {};
}

}  // namespace

std::string FormatReal(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.10g", x);
  return buf;
}

Dataset GenGaussian(std::size_t n, std::size_t d, const Vector& mean,
                    double scale, RngStream& rng) {
  if (n == 0 || d == 0) throw ConfigError("n and d must be positive");
  if (mean.size() != static_cast<Eigen::Index>(d)) throw ConfigError("mean has wrong dimension");
  Matrix x(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(d));
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    for (Eigen::Index j = 0; j < x.cols(); ++j) x(i, j) = mean[j] + scale * rng.Normal();
  }
  return Dataset(std::move(x));
}

Dataset GenContaminated(std::size_t n, std::size_t d, double fraction,
                        const Vector& shift, RngStream& rng) {
  if (!(fraction >= 0.0 && fraction < 1.0)) {
    throw ConfigError("contamination fraction must lie in [0, 1)");
  }
  if (shift.size() != static_cast<Eigen::Index>(d)) throw ConfigError("shift has wrong dimension");
  const auto bad = static_cast<std::size_t>(std::floor(fraction * static_cast<double>(n)));
  Matrix x = GenGaussian(n, d, Vector::Zero(static_cast<Eigen::Index>(d)), 1.0, rng).points();
  for (std::size_t i = 0; i < bad; ++i) x.row(static_cast<Eigen::Index>(i)) += shift.transpose();
  for (std::size_t i = n - 1; i > 0; --i) {
    const auto j = static_cast<Eigen::Index>(rng.Below(i + 1));
    x.row(static_cast<Eigen::Index>(i)).swap(x.row(j));
  }
  return Dataset(std::move(x));
}

Dataset GenCauchyMarginals(std::size_t n, std::size_t d, const Vector& scales,
                           RngStream& rng) {
  if (n == 0 || d == 0) throw ConfigError("n and d must be positive");
  if (scales.size() != static_cast<Eigen::Index>(d) || (scales.array() <= 0.0).any()) {
    throw ConfigError("need d positive scales");
  }
  Matrix x(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(d));
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    for (Eigen::Index j = 0; j < x.cols(); ++j) {
      x(i, j) = std::cauchy_distribution<double>(0.0, scales[j])(rng);
    }
  }
  return Dataset(std::move(x));
}

std::string EstimatorName(Estimator e) {
  switch (e) {
    case Estimator::kPrivateMedian: return "private_median";
    case Estimator::kNonprivateMedian: return "nonprivate_median";
    case Estimator::kClippedMean: return "clipped_mean";
    case Estimator::kSampleMean: return "sample_mean";
  }
  return "unknown";
}

Estimator ParseEstimator(const std::string& name) {
  for (Estimator e : {Estimator::kPrivateMedian, Estimator::kNonprivateMedian,
                      Estimator::kClippedMean, Estimator::kSampleMean}) {
    if (EstimatorName(e) == name) return e;
  }
  throw ConfigError("unknown estimator '" + name + "'");
}

void ExperimentConfig::Validate() const {
  if (dims.empty() || std::find(dims.begin(), dims.end(), 0u) != dims.end()) {
    throw ConfigError("dims must be a nonempty list of positive integers");
  }
  if (n == 0) throw ConfigError("n must be positive");
  if (replications == 0) throw ConfigError("replications must be at least 1");
  if (!(contamination >= 0.0 && contamination < 1.0)) {
    throw ConfigError("contamination must lie in [0, 1)");
  }
  if (estimators.empty()) throw ConfigError("no estimators selected");
  if (!(epsilon > 0.0)) throw ConfigError("epsilon must be positive");
  if (!(s > 0.0)) throw ConfigError("s must be positive");
  if (!(prior_variance_per_dim > 0.0)) throw ConfigError("prior variance must be positive");
  if (directions == 0) throw ConfigError("directions must be positive");
  if (sampler == SamplerKind::kExactGrid) throw ConfigError("experiments need mala or rwm");
  if (!(clip_radius_per_sqrt_d > 0.0)) throw ConfigError("clip radius must be positive");
}

ResultTable RunExperiment(const ExperimentConfig& cfg) {
  cfg.Validate();
  const std::size_t D = cfg.dims.size();
  const std::size_t R = cfg.replications;
  const std::size_t E = cfg.estimators.size();
  // errors[(di * R + r) * E + e]; NaN marks a failed run.
  std::vector<double> errors(D * R * E, std::nan(""));
  std::vector<double> wall(D * R * E, 0.0);
  std::vector<std::string> failures(D * R * E);

#pragma omp parallel for schedule(dynamic, 1)
  for (long cell = 0; cell < static_cast<long>(D * R); ++cell) {
    const std::size_t di = static_cast<std::size_t>(cell) / R;
    const std::size_t r = static_cast<std::size_t>(cell) % R;
    const std::size_t d = cfg.dims[di];
    RngStream data_rng(cfg.seed, StreamId({d, r, 0xDA7A}));
    const Dataset data = GenContaminated(
        cfg.n, d, cfg.contamination,
        Vector::Constant(static_cast<Eigen::Index>(d), cfg.shift), data_rng);
    for (std::size_t e = 0; e < E; ++e) {
      const std::size_t k = static_cast<std::size_t>(cell) * E + e;
      RngStream rng(cfg.seed, StreamId({d, r, e + 1}));
      const auto start = std::chrono::steady_clock::now();
      try {
        errors[k] = EstimateOne(cfg.estimators[e], data, cfg, rng).norm();
      } catch (const std::exception& ex) {
        failures[k] = ex.what();
      }
      wall[k] = std::chrono::duration<double, std::milli>(
                    std::chrono::steady_clock::now() - start)
                    .count();
    }
  }

  ResultTable table;
  for (std::size_t di = 0; di < D; ++di) {
    for (std::size_t e = 0; e < E; ++e) {
      ResultRow row;
      row.d = cfg.dims[di];
      row.estimator = EstimatorName(cfg.estimators[e]);
      row.seed = cfg.seed;
      double sq = 0.0, ms = 0.0;
      for (std::size_t r = 0; r < R; ++r) {
        const std::size_t k = (di * R + r) * E + e;
        ms += wall[k];
        if (!failures[k].empty()) {
          table.diagnostics.push_back("d=" + std::to_string(row.d) + " rep=" +
                                      std::to_string(r) + " " + row.estimator +
                                      ": " + failures[k]);
          continue;
        }
        sq += errors[k] * errors[k];
        ++row.reps;
        table.cells.push_back({row.d, r, row.estimator, errors[k]});
      }
      row.ermse = row.reps == 0 ? std::nan("") : Round10(std::sqrt(sq / row.reps));
      row.wall_ms = Round10(ms);
      table.rows.push_back(row);
    }
  }
  return table;
}

std::vector<Figure1Row> Figure1Data(const std::vector<std::size_t>& dims,
                                    double t, std::size_t directions,
                                    std::size_t vgrid_random, std::uint64_t seed) {
  std::vector<Figure1Row> rows;
  for (std::size_t d : dims) {
    if (d == 0) throw ConfigError("dimensions must be positive");
    const auto model = DVersionModel::CauchyMarginals(Vector::Ones(static_cast<Eigen::Index>(d)));
    RngStream dir_rng(seed, StreamId({d, 1}));
    RngStream v_rng(seed, StreamId({d, 2}));
    const DirectionSet dirs = SampleDirections(d, directions, dir_rng);
    const DirectionSet vgrid = MakeVGrid(d, vgrid_random, v_rng);
    for (DepthType kind : {DepthType::kHalfspace, DepthType::kIntegratedRankWeighted,
                           DepthType::kIntegratedDual}) {
      Figure1Row row;
      row.d = d;
      row.depth = DepthKind{kind}.Name();
      row.alpha = AlphaDVersion(kind, t, model, dirs, vgrid);
      row.log_inv_alpha = std::log(1.0 / row.alpha);
      rows.push_back(row);
    }
  }
  return rows;
}

std::string FormatResults(const ResultTable& table, ResultFormat format) {
  if (format == ResultFormat::kCsv) {
    std::string out = "d,estimator,ermse,reps,wall_ms,seed\n";
    for (const auto& r : table.rows) {
      out += std::to_string(r.d) + "," + r.estimator + "," + FormatReal(r.ermse) +
             "," + std::to_string(r.reps) + "," + FormatReal(r.wall_ms) + "," +
             std::to_string(r.seed) + "\n";
    }
    return out;
  }
  Json arr = Json::array();
  for (const auto& r : table.rows) {
    Json o;
    o["d"] = r.d;
    o["estimator"] = r.estimator;
    o["ermse"] = std::isfinite(r.ermse) ? Json::parse(FormatReal(r.ermse)) : Json();
    o["reps"] = r.reps;
    o["wall_ms"] = Json::parse(FormatReal(r.wall_ms));
    o["seed"] = r.seed;
    arr.push_back(o);
  }
  return arr.dump(2) + "\n";
}

void WriteResults(const ResultTable& table, const std::string& path,
                  ResultFormat format) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << FormatResults(table, format);
  if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

std::vector<ResultRow> ParseResults(const std::string& text, ResultFormat format) {
  std::vector<ResultRow> rows;
  if (format == ResultFormat::kJson) {
    const Json arr = Json::parse(text);
    for (const auto& o : arr) {
      ResultRow r;
      r.d = o.at("d").get<std::size_t>();
      r.estimator = o.at("estimator").get<std::string>();
      r.ermse = o.at("ermse").is_null() ? std::nan("") : o.at("ermse").get<double>();
      r.reps = o.at("reps").get<std::size_t>();
      r.wall_ms = o.at("wall_ms").get<double>();
      r.seed = o.at("seed").get<std::uint64_t>();
      rows.push_back(r);
    }
    return rows;
  }
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (lineno == 1 || Trim(line).empty()) continue;
    const auto f = SplitComma(line);
    if (f.size() != 6) throw ParseError("line " + std::to_string(lineno) + ": expected 6 fields", lineno);
    try {
      ResultRow r;
      r.d = std::stoull(f[0]);
      r.estimator = f[1];
      r.ermse = std::stod(f[2]);
      r.reps = std::stoull(f[3]);
      r.wall_ms = std::stod(f[4]);
      r.seed = std::stoull(f[5]);
      rows.push_back(r);
    } catch (const std::logic_error&) {
      throw ParseError("line " + std::to_string(lineno) + ": malformed field", lineno);
    }
  }
  return rows;
}

std::vector<ResultRow> ReadResults(const std::string& path, ResultFormat format) {
  return ParseResults(ReadFile(path), format);
}

ExperimentConfig ParseExperimentConfig(const std::string& text) {
  ExperimentConfig cfg;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    line = Trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ParseError("line " + std::to_string(lineno) + ": expected key = value", lineno);
    }
    const std::string key = Trim(line.substr(0, eq));
    const std::string value = Trim(line.substr(eq + 1));
    try {
      if (key == "dims") {
        cfg.dims.clear();
        for (const auto& v : SplitComma(value)) cfg.dims.push_back(std::stoull(v));
      } else if (key == "n") {
        cfg.n = std::stoull(value);
      } else if (key == "replications") {
        cfg.replications = std::stoull(value);
      } else if (key == "contamination") {
        cfg.contamination = std::stod(value);
      } else if (key == "shift") {
        cfg.shift = std::stod(value);
      } else if (key == "estimators") {
        cfg.estimators.clear();
        for (const auto& v : SplitComma(value)) cfg.estimators.push_back(ParseEstimator(v));
      } else if (key == "epsilon") {
        cfg.epsilon = std::stod(value);
      } else if (key == "s") {
        cfg.s = std::stod(value);
      } else if (key == "prior_variance_per_dim") {
        cfg.prior_variance_per_dim = std::stod(value);
      } else if (key == "directions") {
        cfg.directions = std::stoull(value);
      } else if (key == "sampler") {
        cfg.sampler = ParseSampler(value);
      } else if (key == "burn_in") {
        cfg.burn_in = std::stoull(value);
      } else if (key == "tune_rounds") {
        cfg.tune_rounds = std::stoull(value);
      } else if (key == "tune_window") {
        cfg.tune_window = std::stoull(value);
      } else if (key == "clip_radius_per_sqrt_d") {
        cfg.clip_radius_per_sqrt_d = std::stod(value);
      } else if (key == "median_steps") {
        cfg.median_steps = std::stoull(value);
      } else if (key == "seed") {
        cfg.seed = std::stoull(value);
      } else {
        throw ParseError("line " + std::to_string(lineno) + ": unknown key '" + key + "'", lineno);
      }
    } catch (const std::logic_error&) {
      throw ParseError("line " + std::to_string(lineno) + ": bad value for '" + key + "'", lineno);
    }
  }
  cfg.Validate();
  return cfg;
}

ExperimentConfig LoadExperimentConfig(const std::string& path) {
  return ParseExperimentConfig(ReadFile(path));
}

std::string FormatExperimentConfig(const ExperimentConfig& cfg) {
  std::ostringstream os;
  os << "dims = ";
  for (std::size_t i = 0; i < cfg.dims.size(); ++i) os << (i ? "," : "") << cfg.dims[i];
  os << "\nn = " << cfg.n << "\nreplications = " << cfg.replications
     << "\ncontamination = " << FormatReal(cfg.contamination)
     << "\nshift = " << FormatReal(cfg.shift) << "\nestimators = ";
  for (std::size_t i = 0; i < cfg.estimators.size(); ++i) {
    os << (i ? "," : "") << EstimatorName(cfg.estimators[i]);
  }
  os << "\nepsilon = " << FormatReal(cfg.epsilon) << "\ns = " << FormatReal(cfg.s)
     << "\nprior_variance_per_dim = " << FormatReal(cfg.prior_variance_per_dim)
     << "\ndirections = " << cfg.directions << "\nsampler = " << SamplerName(cfg.sampler)
     << "\nburn_in = " << cfg.burn_in << "\ntune_rounds = " << cfg.tune_rounds
     << "\ntune_window = " << cfg.tune_window
     << "\nclip_radius_per_sqrt_d = " << FormatReal(cfg.clip_radius_per_sqrt_d)
     << "\nmedian_steps = " << cfg.median_steps << "\nseed = " << cfg.seed << "\n";
  return os.str();
}

}  // namespace dpdepth
