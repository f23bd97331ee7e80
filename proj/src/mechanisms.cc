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

#include "dpdepth/mechanisms.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace dpdepth {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

PriorSpec MakePrior(PriorSpec::Type type, Vector center, double scale,
                    const char* what) {
  if (!(scale > 0.0) || !std::isfinite(scale)) {
    throw ConfigError(std::string(what) + " must be positive and finite");
  }
  if (center.size() == 0 || !center.allFinite()) {
    throw ConfigError("prior center must be a nonempty finite vector");
  }
  PriorSpec p;
  p.type = type;
  p.center = std::move(center);
  p.scale = scale;
  return p;
}

void CheckEpsilon(double epsilon) {
  if (!(epsilon > 0.0)) throw ConfigError("epsilon must be positive");
}

}  // namespace

PriorSpec PriorSpec::Gaussian(Vector center, double sigma) {
  return MakePrior(Type::kGaussian, std::move(center), sigma, "prior sigma");
}

PriorSpec PriorSpec::UniformCube(Vector center, double side) {
  return MakePrior(Type::kUniformCube, std::move(center), side, "cube side");
}

bool PriorSpec::InSupport(const Vector& x) const {
  if (type == Type::kGaussian) return true;
  return ((x - center).cwiseAbs().array() <= scale / 2.0).all();
}

double PriorSpec::LogDensity(const Vector& x) const {
  if (type == Type::kGaussian) {
    return -0.5 * (x - center).squaredNorm() / (scale * scale);
  }
  return InSupport(x) ? 0.0 : kNegInf;
}

Vector PriorSpec::LogDensityGradient(const Vector& x) const {
  if (type != Type::kGaussian) {
    throw ConfigError("the cube prior has no usable log-density gradient");
  }
  return -(x - center) / (scale * scale);
}

Vector PriorSpec::Sample(RngStream& rng) const {
  Vector x(center.size());
  for (Eigen::Index j = 0; j < x.size(); ++j) {
    x[j] = type == Type::kGaussian ? center[j] + scale * rng.Normal()
                                   : center[j] + scale * (rng.Uniform() - 0.5);
  }
  return x;
}

std::string PriorSpec::Describe() const {
  std::ostringstream os;
  os << (type == Type::kGaussian ? "gauss" : "cube") << ":";
  for (Eigen::Index j = 0; j < center.size(); ++j) {
    os << (j ? "," : "") << center[j];
  }
  os << ":" << scale;
  return os.str();
}

std::string SamplerName(SamplerKind kind) {
  switch (kind) {
    case SamplerKind::kExactGrid: return "exact_grid";
    case SamplerKind::kMala: return "mala";
    case SamplerKind::kRwm: return "rwm";
  }
  return "unknown";
}

SamplerKind ParseSampler(const std::string& name) {
  if (name == "exact_grid" || name == "grid") return SamplerKind::kExactGrid;
  if (name == "mala") return SamplerKind::kMala;
  if (name == "rwm") return SamplerKind::kRwm;
  throw ConfigError("unknown sampler '" + name + "' (expected mala, rwm or grid)");
}

double BetaFromK(double epsilon, double K, std::size_t n) {
  CheckEpsilon(epsilon);
  if (n < 1) throw ConfigError("n must be at least 1");
  if (!(K > 0.0)) throw ConfigError("K must be positive");
  return static_cast<double>(n) * epsilon / (2.0 * K);
}

double BetaFromPrivacy(double epsilon, DepthKind kind, std::size_t n,
                       std::size_t d) {
  return BetaFromK(epsilon, GetDepthConstants(kind, d).privacy_k, n);
}

GridResult ExactGridDistribution(const std::vector<double>& depth,
                                 const std::vector<double>& log_prior,
                                 double beta, RngStream& rng) {
  if (depth.empty() || depth.size() != log_prior.size()) {
    throw std::invalid_argument("grid depth and prior sizes must match and be nonzero");
  }
  const std::size_t m = depth.size();
  std::vector<double> logw(m);
  double top = kNegInf;
  for (std::size_t j = 0; j < m; ++j) {
    logw[j] = log_prior[j] == kNegInf ? kNegInf : beta * depth[j] + log_prior[j];
    top = std::max(top, logw[j]);
  }
  if (top == kNegInf) {
    throw DataError("degenerate support: prior density is zero on every grid point");
  }
  double sum = 0.0;
  for (double w : logw) sum += std::exp(w - top);
  const double log_z = top + std::log(sum);
  GridResult r;
  r.beta = beta;
  r.log_probabilities.resize(m);
  r.probabilities.resize(m);
  for (std::size_t j = 0; j < m; ++j) {
    r.log_probabilities[j] = logw[j] - log_z;
    r.probabilities[j] = std::exp(r.log_probabilities[j]);
  }
  const double u = rng.Uniform();
  double acc = 0.0;
  r.index = m - 1;
  for (std::size_t j = 0; j < m; ++j) {
    acc += r.probabilities[j];
    if (u < acc) {
      r.index = j;
      break;
    }
  }
  // Guard against trailing rounding landing on a zero-probability point.
  while (r.probabilities[r.index] == 0.0 && r.index > 0) --r.index;
  return r;
}

DepthEvaluator MakeEvaluator(const Dataset& data, const MechanismConfig& cfg,
                             RngStream& rng) {
  DepthEvaluator::Options opt;
  opt.simplicial_trials = cfg.simplicial_trials;
  opt.simplicial_seed = StreamId({rng.seed(), rng.stream_id(), 0x5D});
  if (cfg.depth.UsesDirections()) {
    if (cfg.directions) {
      opt.directions = cfg.directions;
    } else if (data.d() > 1) {
      RngStream dir_rng = rng.Fork(StreamId({rng.stream_id(), 0xD1}));
      opt.directions = SampleDirections(data.d(), cfg.direction_count, dir_rng);
    }
  }
  return DepthEvaluator(cfg.depth, data, std::move(opt));
}

GridResult ExactGridMechanism(const Matrix& grid, const Dataset& data,
                              const MechanismConfig& cfg, RngStream& rng) {
  if (grid.rows() == 0) throw std::invalid_argument("grid is empty");
  if (grid.cols() != static_cast<Eigen::Index>(data.d()) ||
      cfg.prior.d() != data.d()) {
    throw ConfigError("grid, prior and data dimensions must agree");
  }
  const double beta = BetaFromPrivacy(cfg.epsilon, cfg.depth, data.n(), data.d());
  const DepthEvaluator eval = MakeEvaluator(data, cfg, rng);
  const std::vector<double> depth = eval.Values(grid);
  std::vector<double> log_prior(depth.size());
  for (Eigen::Index j = 0; j < grid.rows(); ++j) {
    log_prior[j] = cfg.prior.LogDensity(grid.row(j).transpose());
  }
  return ExactGridDistribution(depth, log_prior, beta, rng);
}

MechanismResult PrivateMedian(const Dataset& data, const MechanismConfig& cfg,
                              RngStream& rng) {
  switch (cfg.sampler) {
    case SamplerKind::kMala: return MalaSample(data, cfg, rng);
    case SamplerKind::kRwm: return RwmSample(data, cfg, rng);
    case SamplerKind::kExactGrid: break;
  }
  throw ConfigError("the exact grid sampler needs an explicit grid; use "
                    "ExactGridMechanism");
}

double PrivateDepthValue(const Vector& x, const Dataset& data, DepthKind kind,
                         double epsilon, RngStream& rng,
                         std::optional<DirectionSet> directions) {
  CheckEpsilon(epsilon);
  MechanismConfig cfg;
  cfg.depth = kind;
  cfg.directions = std::move(directions);
  const double value = MakeEvaluator(data, cfg, rng).Value(x);
  const double scale = GetDepthConstants(kind, data.d()).privacy_k /
                       (static_cast<double>(data.n()) * epsilon);
  return value + scale * rng.Laplace();
}

Vector CoordinateMedian(const Dataset& data) {
  const std::size_t n = data.n();
  Vector med(static_cast<Eigen::Index>(data.d()));
  std::vector<double> col(n);
  for (std::size_t j = 0; j < data.d(); ++j) {
    for (std::size_t i = 0; i < n; ++i) col[i] = data.row(i)[j];
    const auto mid = col.begin() + static_cast<long>(n / 2);
    std::nth_element(col.begin(), mid, col.end());
    double m = *mid;
    if (n % 2 == 0) m = 0.5 * (m + *std::max_element(col.begin(), mid));
    med[j] = m;
  }
  return med;
}

Vector SampleMean(const Dataset& data) {
  return data.points().colwise().mean().transpose();
}

Vector NonprivateMedian(const Dataset& data, const DirectionSet& dirs, double s,
                        const OptimizerOptions& options) {
  DepthEvaluator::Options opt;
  opt.directions = dirs;
  const DepthEvaluator eval(DepthKind::SmoothedIntegratedDual(s), data, opt);
  Vector x = options.init ? *options.init : CoordinateMedian(data);
  if (x.size() != static_cast<Eigen::Index>(data.d())) {
    throw ConfigError("initial point dimension does not match data");
  }
  if (!(options.learning_rate > 0.0)) throw ConfigError("learning rate must be positive");
  Vector grad;
  double value = eval.ValueAndGradient(x, &grad);
  double lr = options.learning_rate;
  Vector next_grad;
  for (std::size_t step = 0; step < options.steps; ++step) {
    if (grad.squaredNorm() == 0.0) break;
    const Vector next = x + lr * grad;
    const double next_value = eval.ValueAndGradient(next, &next_grad);
    if (next_value >= value) {
      const double moved = (next - x).norm();
      x = next;
      value = next_value;
      grad = next_grad;
      lr *= 2.0;
      if (moved < options.tolerance) break;
    } else {
      lr *= 0.5;
      if (lr * grad.norm() < options.tolerance) break;
    }
  }
  return x;
}

Vector ClippedMeanBaseline(const Dataset& data, double radius, double epsilon,
                           RngStream& rng) {
  CheckEpsilon(epsilon);
  if (!(radius > 0.0)) throw ConfigError("radius must be positive");
  const std::size_t n = data.n();
  const std::size_t d = data.d();
  Vector sum = Vector::Zero(static_cast<Eigen::Index>(d));
  for (std::size_t i = 0; i < n; ++i) {
    Vector row = data.points().row(i).transpose();
    const double norm = row.norm();
    if (norm > radius) row *= radius / norm;
    sum += row;
  }
  Vector mean = sum / static_cast<double>(n);
  const double scale = 2.0 * radius * d / (static_cast<double>(n) * epsilon);
  for (std::size_t j = 0; j < d; ++j) mean[j] += scale * rng.Laplace();
  return mean;
}

}  // namespace dpdepth
