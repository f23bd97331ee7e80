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

#include "dpdepth/theory.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

namespace dpdepth {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void CheckT(double t) {
  if (!(t >= 0.0)) throw ConfigError("radius t must be nonnegative");
}

void CheckAlphaKind(DepthType kind) {
  if (kind != DepthType::kHalfspace && kind != DepthType::kIntegratedRankWeighted &&
      kind != DepthType::kIntegratedDual) {
    throw ConfigError("discrepancy evaluators cover hd, irw and idd only");
  }
}

double Quadratic(const Vector& lambda, const double* u) {
  double q = 0.0;
  for (Eigen::Index j = 0; j < lambda.size(); ++j) q += lambda[j] * u[j] * u[j];
  return q;
}

void CheckPoints(const PriorSpec& prior, const Matrix& points) {
  if (points.rows() == 0 || points.cols() != static_cast<Eigen::Index>(prior.d())) {
    throw ConfigError("point set must be nonempty with the prior's dimension");
  }
}

}  // namespace

double NormalCdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

double CauchyCdf(double z) { return 0.5 + std::atan(z) / std::numbers::pi; }

GaussianModel::GaussianModel(Vector ev) : eigenvalues(std::move(ev)) {
  if (eigenvalues.size() == 0 || (eigenvalues.array() <= 0.0).any()) {
    throw ConfigError("Gaussian eigenvalues must be positive");
  }
  std::sort(eigenvalues.data(), eigenvalues.data() + eigenvalues.size(),
            std::greater<double>());
}

DVersionModel DVersionModel::CauchyMarginals(Vector scales) {
  if (scales.size() == 0 || (scales.array() <= 0.0).any()) {
    throw ConfigError("Cauchy scales must be positive");
  }
  DVersionModel m;
  m.scale = [scales](const double* u, std::size_t d) {
    double a = 0.0;
    for (std::size_t j = 0; j < d; ++j) a += scales[j] * std::abs(u[j]);
    return a;
  };
  m.cdf = CauchyCdf;
  return m;
}

double AlphaGaussian(DepthType kind, double t, const GaussianModel& model,
                     const DirectionSet& dirs) {
  CheckT(t);
  CheckAlphaKind(kind);
  const Vector& lambda = model.eigenvalues;
  if (kind == DepthType::kHalfspace) return NormalCdf(t / std::sqrt(lambda[0])) - 0.5;
  if (dirs.d() != static_cast<std::size_t>(lambda.size())) {
    throw ConfigError("direction dimension does not match the model");
  }
  double sum = 0.0;
  for (std::size_t m = 0; m < dirs.size(); ++m) {
    const double* u = dirs.row(m);
    const double z = t * u[0] / std::sqrt(Quadratic(lambda, u));
    sum += kind == DepthType::kIntegratedRankWeighted
               ? std::abs(0.5 - NormalCdf(z))
               : 0.25 - NormalCdf(-z) * NormalCdf(z);
  }
  return sum / static_cast<double>(dirs.size());
}

double AlphaDVersion(DepthType kind, double t, const DVersionModel& model,
                     const DirectionSet& dirs, const DirectionSet& vgrid) {
  CheckT(t);
  CheckAlphaKind(kind);
  const std::size_t d = vgrid.d();
  if (dirs.d() != d) throw ConfigError("dirs and vgrid dimensions differ");
  const std::size_t M = dirs.size();
  const std::size_t V = vgrid.size();
  std::vector<double> scale(M);
  for (std::size_t m = 0; m < M; ++m) scale[m] = model.scale(dirs.row(m), d);

  std::vector<double> per_v(V);
#pragma omp parallel for schedule(dynamic, 4)
  for (long vi = 0; vi < static_cast<long>(V); ++vi) {
    const double* v = vgrid.row(vi);
    if (kind == DepthType::kHalfspace) {
      // sup over u of v.u / a(u)
      double best = -kInf;
      for (std::size_t m = 0; m < M; ++m) {
        best = std::max(best, std::abs(Dot(v, dirs.row(m), d)) / scale[m]);
      }
      std::vector<double> e(d, 0.0);
      for (std::size_t j = 0; j < d; ++j) {
        e[j] = 1.0;
        best = std::max(best, std::abs(v[j]) / model.scale(e.data(), d));
        e[j] = 0.0;
      }
      best = std::max(best, 1.0 / model.scale(v, d));
      per_v[vi] = best;
    } else {
      double sum = 0.0;
      for (std::size_t m = 0; m < M; ++m) {
        const double z = t * Dot(v, dirs.row(m), d) / scale[m];
        sum += kind == DepthType::kIntegratedRankWeighted
                   ? std::abs(0.5 - model.cdf(z))
                   : model.cdf(z) * model.cdf(-z);
      }
      per_v[vi] = sum / static_cast<double>(M);
    }
  }
  switch (kind) {
    case DepthType::kHalfspace: {
      const double m = *std::min_element(per_v.begin(), per_v.end());
      return 0.5 - model.cdf(-t * m);
    }
    case DepthType::kIntegratedRankWeighted:
      return *std::min_element(per_v.begin(), per_v.end());
    default:
      return 0.25 - *std::max_element(per_v.begin(), per_v.end());
  }
}

double AlphaCauchyHdClosedForm(double t, std::size_t d, double sigma_bar) {
  CheckT(t);
  if (!(sigma_bar > 0.0) || d < 1) throw ConfigError("need d >= 1 and sigma_bar > 0");
  return std::atan(t / (std::sqrt(static_cast<double>(d)) * sigma_bar)) /
         std::numbers::pi;
}

DirectionSet MakeVGrid(std::size_t d, std::size_t random_count, RngStream& rng,
                       const std::vector<Vector>& extra) {
  const std::size_t rows = random_count + d + 1 + extra.size();
  Matrix v(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(d));
  std::size_t r = 0;
  if (random_count > 0) {
    const DirectionSet random = SampleDirections(d, random_count, rng);
    v.topRows(static_cast<Eigen::Index>(random_count)) = random.directions();
    r = random_count;
  }
  for (std::size_t j = 0; j < d; ++j, ++r) {
    v.row(r).setZero();
    v(r, j) = 1.0;
  }
  v.row(r++).setConstant(1.0 / std::sqrt(static_cast<double>(d)));
  for (const Vector& e : extra) {
    if (e.size() != static_cast<Eigen::Index>(d) || e.norm() == 0.0) {
      throw ConfigError("extra vgrid vectors must be nonzero with dimension d");
    }
    v.row(r++) = e.normalized().transpose();
  }
  return DirectionSet(std::move(v), rng.seed(), rng.stream_id());
}

double CubeFaceDistance(const PriorSpec& prior, const Matrix& points) {
  CheckPoints(prior, points);
  double best = kInf;
  const double half = prior.scale / 2.0;
  for (Eigen::Index i = 0; i < points.rows(); ++i) {
    for (Eigen::Index j = 0; j < points.cols(); ++j) {
      const double off = points(i, j) - prior.center[j];
      best = std::min({best, std::abs(off + half), std::abs(off - half)});
    }
  }
  return best;
}

double DistanceToCenter(const PriorSpec& prior, const Matrix& points) {
  CheckPoints(prior, points);
  double best = kInf;
  for (Eigen::Index i = 0; i < points.rows(); ++i) {
    best = std::min(best, (points.row(i).transpose() - prior.center).norm());
  }
  return best;
}

double LogPriorBall(const PriorSpec& prior, const Matrix& points, double r,
                    double C) {
  CheckPoints(prior, points);
  if (!(r > 0.0)) throw ConfigError("ball radius must be positive");
  const double d = static_cast<double>(prior.d());
  if (prior.type == PriorSpec::Type::kGaussian) {
    const double sigma = prior.scale;
    if (sigma < 0.25) throw ConfigError("Gaussian prior-ball bound needs sigma >= 1/4");
    if (prior.d() <= 2) throw ConfigError("Gaussian prior-ball bound needs d > 2");
    if (r > sigma) throw ConfigError("Gaussian prior-ball bound needs r <= sigma");
    const double dist = DistanceToCenter(prior, points);
    return C * (dist * dist / (sigma * sigma) + d * std::log(std::max(sigma / r, d)));
  }
  const double face = CubeFaceDistance(prior, points);
  return C * d * std::log(prior.scale / std::min(face, r));
}

double Psi(double lambda, double L, const PriorSpec& prior, const Matrix& points,
           std::optional<double> extra_r, double C) {
  if (!(lambda >= 0.0) || !(L > 0.0)) throw ConfigError("need lambda >= 0 and L > 0");
  const double hi = prior.scale;
  const double lo = hi * 1e-8;
  std::vector<double> radii;
  for (int k = 0; k < 64; ++k) radii.push_back(lo * std::pow(hi / lo, k / 63.0));
  if (extra_r && *extra_r > 0.0 &&
      (prior.type == PriorSpec::Type::kUniformCube || *extra_r <= hi)) {
    radii.push_back(*extra_r);
  }
  double best = kInf;
  for (double r : radii) {
    best = std::min(best, lambda * L * r + LogPriorBall(prior, points, r, C));
  }
  return best;
}

RateEstimate RateFunctionMc(const PriorSpec& prior, const Matrix& points,
                            double t, std::size_t samples, RngStream& rng) {
  CheckPoints(prior, points);
  CheckT(t);
  if (samples == 0) throw ConfigError("need at least one sample");
  constexpr std::size_t kChunk = 4096;
  const std::size_t chunks = (samples + kChunk - 1) / kChunk;
  std::vector<std::size_t> outside(chunks, 0);
#pragma omp parallel for schedule(static)
  for (long c = 0; c < static_cast<long>(chunks); ++c) {
    RngStream local = rng.Fork(StreamId({rng.stream_id(), 0x5A, static_cast<std::uint64_t>(c)}));
    const std::size_t end = std::min(samples, (c + 1) * kChunk);
    for (std::size_t s = c * kChunk; s < end; ++s) {
      const Vector x = prior.Sample(local);
      double dist = kInf;
      for (Eigen::Index i = 0; i < points.rows(); ++i) {
        dist = std::min(dist, (x - points.row(i).transpose()).norm());
      }
      outside[c] += dist > t;
    }
  }
  std::size_t total = 0;
  for (std::size_t o : outside) total += o;
  RateEstimate est;
  if (total == 0) {
    est.value = std::log(static_cast<double>(samples));
    est.lower_bound = true;
  } else {
    est.value = -std::log(static_cast<double>(total) / static_cast<double>(samples));
  }
  return est;
}

double ConcentrationBound(const BoundInputs& in, double alpha_t, double rate_t,
                          double psi) {
  const double gap = std::max(rate_t / (in.n * in.epsilon), alpha_t / (2.0 * in.K));
  const double log1 = in.vc * std::log(in.c1 * in.n / in.vc) - in.c2 * in.n * gap * gap;
  const double log2 = -in.n * in.epsilon * alpha_t / (4.0 * in.K) - rate_t / 2.0 + psi;
  const double top = std::max(log1, log2);
  if (!(top < 0.0)) return 1.0;
  const double log_sum = top + std::log(std::exp(log1 - top) + std::exp(log2 - top));
  return std::clamp(std::exp(log_sum), 0.0, 1.0);
}

SampleComplexity ComputeSampleComplexity(PriorFamily family,
                                         const BoundInputs& in, double alpha_t,
                                         const PriorGeometry& g) {
  if (!(alpha_t > 0.0)) {
    throw ConfigError("accuracy unreachable: alpha(t) must be positive");
  }
  if (!(in.gamma > 0.0 && in.gamma < 1.0)) throw ConfigError("gamma must lie in (0, 1)");
  if (!(in.epsilon > 0.0)) throw ConfigError("epsilon must be positive");
  const double log_gamma = std::log(1.0 / in.gamma);
  SampleComplexity sc;
  sc.statistical =
      std::max(log_gamma, std::max(in.vc * std::log(in.K / (in.c * alpha_t)), 1.0)) /
      (alpha_t * alpha_t);
  double second;
  if (family == PriorFamily::kGaussian) {
    if (!(g.sigma > 0.0)) throw ConfigError("prior sigma must be positive");
    second = std::max({log_gamma,
                       g.center_distance * g.center_distance / (g.sigma * g.sigma),
                       in.d * std::log(std::max(g.sigma * in.L / alpha_t, in.d))});
  } else {
    if (!(g.side > 0.0) || !(g.face_distance > 0.0)) {
      throw ConfigError("cube side and face distance must be positive");
    }
    second = std::max(
        log_gamma,
        in.d * std::log(g.side / std::min(g.face_distance, alpha_t / in.L)));
  }
  sc.privacy = second / (in.epsilon * alpha_t);
  sc.bound = in.C * in.K * in.K * std::max(sc.statistical, sc.privacy);
  sc.n = std::ceil(sc.bound);
  return sc;
}

double DirectionBudget(double t, double gamma, std::size_t d, std::size_t n,
                       double c1) {
  if (!(t > 0.0 && t < 1.0) || !(gamma > 0.0 && gamma < 1.0)) {
    throw ConfigError("t and gamma must lie in (0, 1)");
  }
  const double inner =
      std::max(std::log(1.0 / gamma),
               static_cast<double>(d) * static_cast<double>(n) *
                   std::log(std::max(1.0 / t, std::numbers::e)));
  // Round away floating noise so exact integers are not pushed up by one.
  const double value = c1 * inner / (t * t);
  return std::ceil(value * (1.0 - 1e-14));
}

}  // namespace dpdepth
