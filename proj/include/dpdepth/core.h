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

#ifndef DPDEPTH_CORE_H_
#define DPDEPTH_CORE_H_

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

#include "dpdepth/rng.h"

namespace dpdepth {

using Vector = Eigen::VectorXd;
using Matrix =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// Malformed input text. `line()` is 1-based, 0 when not tied to a line.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : std::runtime_error(what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Well-formed input that violates a data invariant (non-finite value, empty
// dataset, too few rows for an operation, ...).
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A configuration the library cannot honor (wrong sampler for a depth,
// degenerate step size, unsupported prior, ...).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// n x d matrix of finite reals, one observation per row. Duplicate rows are
// allowed. Immutable after construction.
class Dataset {
 public:
  // Throws DataError unless n >= 1, d >= 1 and every entry is finite.
  explicit Dataset(Matrix points);

  std::size_t n() const { return static_cast<std::size_t>(points_.rows()); }
  std::size_t d() const { return static_cast<std::size_t>(points_.cols()); }
  const Matrix& points() const { return points_; }
  const double* row(std::size_t i) const { return points_.row(i).data(); }

 private:
  Matrix points_;
};

// The empirical measure of a dataset: mass 1/n on every row (so a point that
// appears k times carries k/n).
class EmpiricalMeasure {
 public:
  explicit EmpiricalMeasure(const Dataset& data) : data_(&data) {}
  const Dataset& data() const { return *data_; }
  double atom_mass() const { return 1.0 / static_cast<double>(data_->n()); }
  double total_mass() const { return atom_mass() * data_->n(); }

 private:
  const Dataset* data_;
};

// M unit vectors in R^d, one per row.
class DirectionSet {
 public:
  // Throws DataError if a row's norm is not 1 within 1e-12.
  DirectionSet(Matrix directions, std::uint64_t seed = 0,
               std::uint64_t stream_id = 0);

  std::size_t size() const { return static_cast<std::size_t>(dirs_.rows()); }
  std::size_t d() const { return static_cast<std::size_t>(dirs_.cols()); }
  const Matrix& directions() const { return dirs_; }
  const double* row(std::size_t m) const { return dirs_.row(m).data(); }
  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

  // {+1, -1}: the whole 0-sphere, which makes projection depths exact in d=1.
  static DirectionSet Line();

 private:
  Matrix dirs_;
  std::uint64_t seed_;
  std::uint64_t stream_id_;
};

enum class DataFormat { kCsv, kJsonl };

// Reads a dataset. CSV is comma-separated decimal reals without a header
// unless `skip_header`; JSONL is one JSON array of numbers per line. Blank
// lines are ignored.
Dataset LoadDataset(const std::string& path, DataFormat format,
                    bool skip_header = false);
// Same as LoadDataset but from an in-memory document.
Dataset ParseDataset(const std::string& text, DataFormat format,
                     bool skip_header = false);

// M directions uniform on the unit sphere of R^d: normalized i.i.d. standard
// Gaussian vectors. Consumes draws from `rng`.
DirectionSet SampleDirections(std::size_t d, std::size_t count, RngStream& rng);

// Copy of `data` with row `index` replaced by `replacement`.
Dataset AdjacentDataset(const Dataset& data, std::size_t index,
                        const Vector& replacement);

// Parses "1,2.5,-3" into a vector.
Vector ParseVector(const std::string& text);

inline double Dot(const double* a, const double* b, std::size_t d) {
  double s = 0.0;
  for (std::size_t j = 0; j < d; ++j) s += a[j] * b[j];
  return s;
}

}  // namespace dpdepth

#endif  // DPDEPTH_CORE_H_
