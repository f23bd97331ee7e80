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

#include "dpdepth/depth.h"

#include <algorithm>
#include <cmath>
#include <vector>

#include "dpdepth/depth_kernels.h"
#include "dpdepth/depth_reference.h"
#include "dpdepth/simplex_internal.h"

namespace dpdepth {

DepthKind DepthKind::SmoothedIntegratedDual(double s) {
  if (!(s > 0.0)) {
    throw ConfigError("smoothing parameter s must be positive, got " +
                      std::to_string(s));
  }
  return {DepthType::kSmoothedIntegratedDual, s};
}

DepthKind DepthKind::Parse(std::string_view name, double smoothing) {
  if (name == "hd") return Halfspace();
  if (name == "smd") return Simplicial();
  if (name == "sd") return Spatial();
  if (name == "msd") return ModifiedSpatial();
  if (name == "idd") return IntegratedDual();
  if (name == "irw") return IntegratedRankWeighted();
  if (name == "sidd") return SmoothedIntegratedDual(smoothing);
  throw ConfigError("unknown depth kind '" + std::string(name) +
                    "' (expected hd, smd, sd, msd, idd, irw or sidd)");
}

std::string DepthKind::Name() const {
  switch (type) {
    case DepthType::kHalfspace: return "hd";
    case DepthType::kSimplicial: return "smd";
    case DepthType::kSpatial: return "sd";
    case DepthType::kModifiedSpatial: return "msd";
    case DepthType::kIntegratedDual: return "idd";
    case DepthType::kIntegratedRankWeighted: return "irw";
    case DepthType::kSmoothedIntegratedDual: return "sidd";
  }
  return "unknown";
}

bool DepthKind::UsesDirections() const {
  switch (type) {
    case DepthType::kHalfspace:
    case DepthType::kIntegratedDual:
    case DepthType::kIntegratedRankWeighted:
    case DepthType::kSmoothedIntegratedDual:
      return true;
    default:
      return false;
  }
}

DepthConstants GetDepthConstants(DepthKind kind, std::size_t d,
                                 const VcRule& rule) {
  if (d < 1) throw ConfigError("dimension must be at least 1");
  const double dd = static_cast<double>(d);
  DepthConstants c;
  c.vc = dd + 2.0;
  c.vc_class = "O(d)";
  switch (kind.type) {
    case DepthType::kHalfspace:
      c.K = 1.0;
      c.lipschitz_form = "sup_u ||f_u||_inf";
      c.admissible = "M1(R^d)";
      break;
    case DepthType::kIntegratedDual:
    case DepthType::kSmoothedIntegratedDual:
      c.K = 3.0;
      c.lipschitz_form = "3 sup_u ||f_u||_inf";
      c.admissible = "centrally symmetric";
      break;
    case DepthType::kIntegratedRankWeighted:
      c.K = 4.0;
      c.lipschitz_form = "2 sup_u ||f_u||_inf";
      c.admissible = "centrally symmetric";
      break;
    case DepthType::kSimplicial:
      c.K = dd + 1.0;
      c.vc = rule.simplicial_c * dd * dd * std::log(dd + 2.0);
      c.vc_class = "O(d^2 log d)";
      c.lipschitz_form = "sup_u ||f_u||_inf";
      c.admissible = "angularly symmetric, absolutely continuous";
      break;
    case DepthType::kSpatial:
      c.K = dd;
      c.vc = rule.spatial_c * dd;
      c.lipschitz_form = "2 L'";
      c.admissible = "none";
      break;
    case DepthType::kModifiedSpatial:
      c.K = 1.0;
      c.lipschitz_form = "2 sqrt(d) L'";
      c.admissible = "none";
      break;
  }
  // One replaced row moves the mean spatial sign by at most 2/n in norm, so
  // SD changes by at most 2/n and MSD by at most (2/n)(|m| + |m'|) <= 4/n.
  c.privacy_k = c.K;
  if (kind.type == DepthType::kSpatial) c.privacy_k = std::max(dd, 2.0);
  if (kind.type == DepthType::kModifiedSpatial) c.privacy_k = 4.0;
  return c;
}

double DirectionalCdf(const Vector& x, const Vector& u, const Dataset& data,
                      bool strict) {
  if (x.size() != static_cast<Eigen::Index>(data.d()) || u.size() != x.size()) {
    throw std::invalid_argument("dimension mismatch");
  }
  return reference::DirectionalCdf(x, u.data(), data, strict);
}

namespace {

DepthEvaluator::Options WithDirections(const DirectionSet& dirs) {
  DepthEvaluator::Options o;
  o.directions = dirs;
  return o;
}

}  // namespace

double HalfspaceDepth(const Vector& x, const Dataset& data,
                      const DirectionSet& dirs) {
  return DepthEvaluator(DepthKind::Halfspace(), data, WithDirections(dirs))
      .Value(x);
}

double HalfspaceDepth1d(double x, const Dataset& data) {
  if (data.d() != 1) throw std::invalid_argument("HalfspaceDepth1d needs d = 1");
  std::size_t le = 0, lt = 0;
  for (std::size_t i = 0; i < data.n(); ++i) {
    le += data.row(i)[0] <= x;
    lt += data.row(i)[0] < x;
  }
  const double n = static_cast<double>(data.n());
  return std::min(le / n, 1.0 - lt / n);
}

double IrwDepth(const Vector& x, const Dataset& data, const DirectionSet& dirs) {
  return DepthEvaluator(DepthKind::IntegratedRankWeighted(), data,
                        WithDirections(dirs))
      .Value(x);
}

double IddDepth(const Vector& x, const Dataset& data, const DirectionSet& dirs) {
  return DepthEvaluator(DepthKind::IntegratedDual(), data, WithDirections(dirs))
      .Value(x);
}

double SiddDepth(const Vector& x, const Dataset& data, const DirectionSet& dirs,
                 double s) {
  return DepthEvaluator(DepthKind::SmoothedIntegratedDual(s), data,
                        WithDirections(dirs))
      .Value(x);
}

Vector SiddGradient(const Vector& x, const Dataset& data,
                    const DirectionSet& dirs, double s) {
  return DepthEvaluator(DepthKind::SmoothedIntegratedDual(s), data,
                        WithDirections(dirs))
      .Gradient(x);
}

double SpatialDepth(const Vector& x, const Dataset& data) {
  if (x.size() != static_cast<Eigen::Index>(data.d())) {
    throw std::invalid_argument("dimension mismatch");
  }
  return 1.0 - kernels::MeanSpatialSign(data, x).norm();
}

double ModifiedSpatialDepth(const Vector& x, const Dataset& data) {
  if (x.size() != static_cast<Eigen::Index>(data.d())) {
    throw std::invalid_argument("dimension mismatch");
  }
  return 1.0 - kernels::MeanSpatialSign(data, x).squaredNorm();
}

struct DepthEvaluator::Impl {
  Dataset data;
  std::optional<kernels::ProjectionIndex> index;
  std::vector<internal::SimplexTuple> tuples;
  // Sorted d = 1 sample for the exact simplicial closed form.
  std::vector<double> sorted1d;
};

DepthEvaluator::DepthEvaluator(DepthKind kind, const Dataset& data,
                               Options options)
    : kind_(kind), impl_(std::make_unique<Impl>(Impl{data, {}, {}, {}})) {
  const std::size_t d = data.d();
  if (kind.UsesDirections()) {
    if (!options.directions) {
      if (d != 1) {
        throw ConfigError(kind.Name() + " depth in d >= 2 needs a DirectionSet");
      }
      options.directions = DirectionSet::Line();
    }
    if (options.directions->d() != d) {
      throw ConfigError("DirectionSet dimension " +
                        std::to_string(options.directions->d()) +
                        " does not match data dimension " + std::to_string(d));
    }
    if (options.directions->size() == 0) {
      throw ConfigError("DirectionSet is empty");
    }
    impl_->index.emplace(impl_->data, *options.directions);
  }
  if (kind.type == DepthType::kSimplicial) {
    if (d == 1) {
      impl_->sorted1d.resize(data.n());
      for (std::size_t i = 0; i < data.n(); ++i) impl_->sorted1d[i] = data.row(i)[0];
      std::sort(impl_->sorted1d.begin(), impl_->sorted1d.end());
    } else {
      if (data.n() < d + 1) {
        throw DataError("simplicial depth needs at least d+1 rows");
      }
      if (options.simplicial_trials == 0) {
        throw ConfigError("simplicial depth needs trials >= 1");
      }
      RngStream rng(options.simplicial_seed, StreamId({0x53, d, data.n()}));
      std::vector<std::size_t> idx(d + 1);
      impl_->tuples.reserve(options.simplicial_trials);
      for (std::size_t t = 0; t < options.simplicial_trials; ++t) {
        for (auto& i : idx) i = static_cast<std::size_t>(rng.Below(data.n()));
        impl_->tuples.emplace_back(internal::TupleVertices(data, idx.data()));
      }
    }
  }
}

DepthEvaluator::~DepthEvaluator() = default;
DepthEvaluator::DepthEvaluator(DepthEvaluator&&) noexcept = default;
DepthEvaluator& DepthEvaluator::operator=(DepthEvaluator&&) noexcept = default;

std::size_t DepthEvaluator::n() const { return impl_->data.n(); }
std::size_t DepthEvaluator::d() const { return impl_->data.d(); }

double DepthEvaluator::Value(const Vector& x) const {
  if (x.size() != static_cast<Eigen::Index>(d())) {
    throw std::invalid_argument("point has dimension " + std::to_string(x.size()) +
                                ", data has " + std::to_string(d()));
  }
  const Impl& im = *impl_;
  switch (kind_.type) {
    case DepthType::kHalfspace:
      return kernels::Halfspace(*im.index, x);
    case DepthType::kIntegratedDual:
      return kernels::IntegratedDual(*im.index, x);
    case DepthType::kIntegratedRankWeighted:
      return kernels::IntegratedRankWeighted(*im.index, x);
    case DepthType::kSmoothedIntegratedDual:
      if (std::isinf(kind_.smoothing)) return kernels::IntegratedDual(*im.index, x);
      return kernels::SmoothedIntegratedDual(*im.index, x, kind_.smoothing, nullptr);
    case DepthType::kSpatial:
      return 1.0 - kernels::MeanSpatialSign(im.data, x).norm();
    case DepthType::kModifiedSpatial:
      return 1.0 - kernels::MeanSpatialSign(im.data, x).squaredNorm();
    case DepthType::kSimplicial: {
      if (!im.sorted1d.empty()) {
        const auto& s = im.sorted1d;
        const double n = static_cast<double>(s.size());
        const double f = (std::upper_bound(s.begin(), s.end(), x[0]) - s.begin()) / n;
        const double fs = (std::lower_bound(s.begin(), s.end(), x[0]) - s.begin()) / n;
        return 1.0 - fs * fs - (1.0 - f) * (1.0 - f);
      }
      std::size_t inside = 0;
      for (const auto& t : im.tuples) inside += t.Contains(x);
      return static_cast<double>(inside) / static_cast<double>(im.tuples.size());
    }
  }
  return 0.0;
}

double DepthEvaluator::ValueAndGradient(const Vector& x, Vector* gradient) const {
  if (!kind_.Differentiable() || std::isinf(kind_.smoothing)) {
    throw ConfigError(kind_.Name() +
                      " depth is not differentiable; only sidd with finite s is");
  }
  if (x.size() != static_cast<Eigen::Index>(d())) {
    throw std::invalid_argument("point dimension mismatch");
  }
  return kernels::SmoothedIntegratedDual(*impl_->index, x, kind_.smoothing,
                                         gradient);
}

Vector DepthEvaluator::Gradient(const Vector& x) const {
  Vector g;
  ValueAndGradient(x, &g);
  return g;
}

std::vector<double> DepthEvaluator::Values(const Matrix& points) const {
  if (points.cols() != static_cast<Eigen::Index>(d())) {
    throw std::invalid_argument("points dimension mismatch");
  }
  std::vector<double> out(static_cast<std::size_t>(points.rows()));
#pragma omp parallel for schedule(dynamic, 16)
  for (long r = 0; r < static_cast<long>(points.rows()); ++r) {
    out[r] = Value(points.row(r).transpose());
  }
  return out;
}

}  // namespace dpdepth
