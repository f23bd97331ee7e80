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

#include <cmath>
#include <limits>

#include "dpdepth/mechanisms.h"

namespace dpdepth {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kMalaTarget = 0.57;
constexpr double kRwmTarget = 0.23;

// log of exp(β D(x)) π(x), and its gradient when requested.
class LogTarget {
 public:
  LogTarget(const DepthEvaluator& depth, const PriorSpec& prior, double beta)
      : depth_(depth), prior_(prior), beta_(beta) {}

  double Eval(const Vector& x, Vector* grad) const {
    const double lp = prior_.LogDensity(x);
    if (lp == kNegInf) return kNegInf;
    if (grad == nullptr) return beta_ == 0.0 ? lp : beta_ * depth_.Value(x) + lp;
    *grad = prior_.LogDensityGradient(x);
    if (beta_ == 0.0) return lp;
    Vector g;
    const double v = depth_.ValueAndGradient(x, &g);
    *grad += beta_ * g;
    return beta_ * v + lp;
  }

 private:
  const DepthEvaluator& depth_;
  const PriorSpec& prior_;
  double beta_;
};

class Chain {
 public:
  Chain(const LogTarget& target, bool langevin, Vector start, RngStream& rng)
      : target_(target), langevin_(langevin), rng_(rng), x_(std::move(start)) {
    logp_ = target_.Eval(x_, langevin_ ? &grad_ : nullptr);
  }

  bool Step(double h) {
    const Eigen::Index d = x_.size();
    Vector y(d);
    for (Eigen::Index j = 0; j < d; ++j) y[j] = h * rng_.Normal();
    if (langevin_) y += 0.5 * h * h * grad_;
    y += x_;
    Vector grad_y;
    const double logp_y = target_.Eval(y, langevin_ ? &grad_y : nullptr);
    if (logp_y == kNegInf) return false;
    double log_alpha = logp_y - logp_;
    if (langevin_) {
      const double inv = 1.0 / (2.0 * h * h);
      const double fwd = (y - x_ - 0.5 * h * h * grad_).squaredNorm();
      const double bwd = (x_ - y - 0.5 * h * h * grad_y).squaredNorm();
      log_alpha += (fwd - bwd) * inv;
    }
    if (log_alpha >= 0.0 || std::log(rng_.Uniform()) < log_alpha) {
      x_ = std::move(y);
      logp_ = logp_y;
      if (langevin_) grad_ = std::move(grad_y);
      return true;
    }
    return false;
  }

  const Vector& state() const { return x_; }

 private:
  const LogTarget& target_;
  bool langevin_;
  RngStream& rng_;
  Vector x_;
  Vector grad_;
  double logp_ = 0.0;
};

// Doubling/halving until the target acceptance rate is bracketed, then a
// stochastic-approximation update of log h with decaying gain.
double TuneStep(Chain& chain, double h, double target, const ChainConfig& cfg) {
  bool bracketed = false;
  int last_sign = 0;
  std::size_t adapt = 0;
  for (std::size_t round = 0; round < cfg.tune_rounds; ++round) {
    std::size_t accepted = 0;
    for (std::size_t t = 0; t < cfg.tune_window; ++t) accepted += chain.Step(h);
    const double rate = static_cast<double>(accepted) / cfg.tune_window;
    const int sign = rate >= target ? 1 : -1;
    if (!bracketed) {
      bracketed = last_sign != 0 && sign != last_sign;
      last_sign = sign;
    }
    if (!bracketed) {
      h = sign > 0 ? 2.0 * h : 0.5 * h;
    } else {
      ++adapt;
      h *= std::exp(2.0 * (rate - target) / std::sqrt(static_cast<double>(adapt)));
    }
  }
  return h;
}

void CheckChain(const ChainConfig& chain) {
  if (chain.step_size && !(*chain.step_size > 0.0 && std::isfinite(*chain.step_size))) {
    throw ConfigError("step size must be positive and finite");
  }
  if (chain.kept == 0) throw ConfigError("chain must keep at least one state");
  if (chain.thin == 0) throw ConfigError("thinning must be at least 1");
  if (!chain.step_size && chain.tune_window == 0) {
    throw ConfigError("step-size tuning needs a positive window");
  }
}

MechanismResult Sample(const Dataset& data, const MechanismConfig& cfg,
                       RngStream& rng, SamplerKind sampler) {
  if (cfg.prior.d() != data.d()) {
    throw ConfigError("prior dimension " + std::to_string(cfg.prior.d()) +
                      " does not match data dimension " + std::to_string(data.d()));
  }
  const double beta = BetaFromPrivacy(cfg.epsilon, cfg.depth, data.n(), data.d());
  const DepthEvaluator eval = MakeEvaluator(data, cfg, rng);
  MechanismResult r = RunChain(eval, cfg.prior, beta, sampler, cfg.chain, rng);
  r.epsilon = cfg.epsilon;
  return r;
}

}  // namespace

MechanismResult RunChain(const DepthEvaluator& depth, const PriorSpec& prior,
                         double beta, SamplerKind sampler,
                         const ChainConfig& chain, RngStream& rng) {
  CheckChain(chain);
  if (sampler == SamplerKind::kExactGrid) {
    throw ConfigError("RunChain needs the mala or rwm sampler");
  }
  const bool langevin = sampler == SamplerKind::kMala;
  if (langevin) {
    if (!depth.kind().Differentiable() || std::isinf(depth.kind().smoothing)) {
      throw ConfigError("mala needs the differentiable sidd depth; use rwm for " +
                        depth.kind().Name());
    }
    if (prior.type != PriorSpec::Type::kGaussian) {
      throw ConfigError("mala needs a Gaussian prior; use rwm for the cube prior");
    }
  }
  if (!(beta >= 0.0)) throw ConfigError("beta must be nonnegative");
  if (prior.d() != depth.d()) throw ConfigError("prior and data dimensions differ");

  const LogTarget target(depth, prior, beta);
  Chain state(target, langevin, prior.center, rng);
  const double target_rate = langevin ? kMalaTarget : kRwmTarget;
  double h;
  if (chain.step_size) {
    h = *chain.step_size;
  } else {
    const double spread =
        prior.type == PriorSpec::Type::kGaussian ? prior.scale : prior.scale / 4.0;
    h = TuneStep(state, spread / std::sqrt(static_cast<double>(prior.d())),
                 target_rate, chain);
  }

  MechanismResult r;
  r.beta = beta;
  r.step_size = h;
  r.sampler = SamplerName(sampler);
  r.seed = rng.seed();
  r.stream_id = rng.stream_id();
  std::size_t accepted = 0;
  for (std::size_t t = 0; t < chain.burn_in; ++t) accepted += state.Step(h);
  if (chain.record_trace) {
    r.trace = Matrix(static_cast<Eigen::Index>(chain.kept),
                     static_cast<Eigen::Index>(prior.d()));
  }
  for (std::size_t k = 0; k < chain.kept; ++k) {
    for (std::size_t t = 0; t < chain.thin; ++t) accepted += state.Step(h);
    if (r.trace) r.trace->row(static_cast<Eigen::Index>(k)) = state.state().transpose();
  }
  r.chain_length = chain.burn_in + chain.kept * chain.thin;
  r.acceptance_rate =
      r.chain_length == 0 ? 0.0 : static_cast<double>(accepted) / r.chain_length;
  r.theta = state.state();
  return r;
}

MechanismResult MalaSample(const Dataset& data, const MechanismConfig& cfg,
                           RngStream& rng) {
  if (cfg.depth.type != DepthType::kSmoothedIntegratedDual ||
      std::isinf(cfg.depth.smoothing)) {
    throw ConfigError("mala needs the differentiable sidd depth; use rwm for " +
                      cfg.depth.Name());
  }
  if (cfg.prior.type != PriorSpec::Type::kGaussian) {
    throw ConfigError("mala needs a Gaussian prior; use rwm for the cube prior");
  }
  return Sample(data, cfg, rng, SamplerKind::kMala);
}

MechanismResult RwmSample(const Dataset& data, const MechanismConfig& cfg,
                          RngStream& rng) {
  return Sample(data, cfg, rng, SamplerKind::kRwm);
}

}  // namespace dpdepth
