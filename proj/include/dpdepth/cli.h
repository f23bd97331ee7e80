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

#ifndef DPDEPTH_CLI_H_
#define DPDEPTH_CLI_H_

#include <cstddef>
#include <ostream>
#include <string>
#include <vector>

#include "dpdepth/core.h"
#include "dpdepth/mechanisms.h"

namespace dpdepth::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitRuntime = 1;
inline constexpr int kExitUsage = 2;

// Runs one command line (without the program name). Results go to `out`
// unless --output names a file; the resolved configuration and errors go to
// `err`. Returns 0 on success, 2 on a usage error, 1 on a runtime error.
int Dispatch(const std::vector<std::string>& args, std::ostream& out,
             std::ostream& err);

// Evaluates "25", "3d", "d", "2.5*d" or "sqrt(<expr>)" with d bound to `d`.
double EvalScaleExpr(const std::string& text, double d);

// "gauss:<center>:<sigma>" or "cube:<center>:<side>"; center "0" is the zero
// vector of dimension d, otherwise a comma-separated list.
PriorSpec ParsePrior(const std::string& text, std::size_t d);

}  // namespace dpdepth::cli

#endif  // DPDEPTH_CLI_H_
