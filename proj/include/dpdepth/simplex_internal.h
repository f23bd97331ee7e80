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

#ifndef DPDEPTH_SIMPLEX_INTERNAL_H_
#define DPDEPTH_SIMPLEX_INTERNAL_H_

#include <cstddef>

#include "dpdepth/core.h"

namespace dpdepth::internal {

// A (d+1)-vertex simplex with its barycentric inverse cached. Degenerate
// tuples fall back to PointInSimplex.
class SimplexTuple {
 public:
  explicit SimplexTuple(Matrix vertices);
  bool Contains(const Vector& x) const;
  bool degenerate() const { return degenerate_; }

 private:
  Matrix vertices_;
  Eigen::MatrixXd inverse_;
  bool degenerate_ = true;
};

// Rows idx[0..d] of `data` stacked into a (d+1) x d matrix.
Matrix TupleVertices(const Dataset& data, const std::size_t* idx);

}  // namespace dpdepth::internal

#endif  // DPDEPTH_SIMPLEX_INTERNAL_H_
