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

#ifndef DPDEPTH_RNG_H_
#define DPDEPTH_RNG_H_

#include <array>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <random>

namespace dpdepth {

// Philox4x32-10 block function (Salmon et al., "Parallel random numbers: as
// easy as 1, 2, 3"). Exposed for known-answer testing.
std::array<std::uint32_t, 4> Philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key);

// Counter-based random stream keyed by (seed, stream id).
//
// The seed is the Philox key and the stream id occupies the upper half of the
// counter, so two streams with the same seed and different ids never share a
// block. Draws are a pure function of (seed, stream id, draw index), which
// keeps parallel replications reproducible regardless of scheduling.
//
// Satisfies UniformRandomBitGenerator, so it can drive <random> distributions.
// Instances are cheap to copy; never share one between threads.
class RngStream {
 public:
  using result_type = std::uint64_t;

  RngStream(std::uint64_t seed, std::uint64_t stream_id);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }
  result_type operator()();

  // Uniform on [0, 1) with 53 random bits.
  double Uniform();
  // Standard normal.
  double Normal();
  // Standard Laplace, i.e. density exp(-|w|)/2.
  double Laplace();
  // Uniform integer in [0, bound).
  std::uint64_t Below(std::uint64_t bound);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

  // A fresh stream with the same seed and a different id.
  RngStream Fork(std::uint64_t stream_id) const {
    return RngStream(seed_, stream_id);
  }

 private:
  void Refill();

  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::uint64_t block_ = 0;
  std::array<std::uint32_t, 4> buffer_{};
  int used_ = 4;  // words consumed from buffer_
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::exponential_distribution<double> exponential_{1.0};
};

// Mixes a list of integers into a single stream id (SplitMix64 finalizer
// chained over the parts). Used to derive per-cell streams such as
// (dimension, replication, estimator).
std::uint64_t StreamId(std::initializer_list<std::uint64_t> parts);

}  // namespace dpdepth

#endif  // DPDEPTH_RNG_H_
