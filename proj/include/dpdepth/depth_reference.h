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

// Serial, definition-by-definition depth implementations. No sorting, no
// precomputation, no threads. Kept as the oracle for the kernels in
// depth_kernels.h and as the baseline in bench/.

#ifndef DPDEPTH_DEPTH_REFERENCE_H_
#define DPDEPTH_DEPTH_REFERENCE_H_

#include "dpdepth/core.h"

namespace dpdepth::reference {

double DirectionalCdf(const Vector& x, const double* u, const Dataset& data,
                      bool strict);
double Halfspace(const Vector& x, const Dataset& data, const DirectionSet& dirs);
double IntegratedRankWeighted(const Vector& x, const Dataset& data,
                              const DirectionSet& dirs);
double IntegratedDual(const Vector& x, const Dataset& data,
                      const DirectionSet& dirs);
double SmoothedIntegratedDual(const Vector& x, const Dataset& data,
                              const DirectionSet& dirs, double s);
Vector SmoothedIntegratedDualGradient(const Vector& x, const Dataset& data,
                                      const DirectionSet& dirs, double s);
double Spatial(const Vector& x, const Dataset& data);
double ModifiedSpatial(const Vector& x, const Dataset& data);
// Enumerates all n^(d+1) ordered vertex tuples.
double SimplicialEnumerated(const Vector& x, const Dataset& data);

}  // namespace dpdepth::reference

#endif  // DPDEPTH_DEPTH_REFERENCE_H_
