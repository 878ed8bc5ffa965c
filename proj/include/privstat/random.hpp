// Copyright 2026 The privstat Authors
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

#pragma once

#include <cstdint>

namespace privstat {

// Deterministic counter-based random source with splittable substreams.
//
// The same seed and the same sequence of draw requests produce the same
// outputs on every platform: the generator is SplitMix64 (a keyed counter
// pushed through a 64-bit finalizer), and normal deviates come from the
// AS241 inverse-CDF applied to one 53-bit uniform, so no
// implementation-defined distribution code is involved.
//
// substream(id) derives an unrelated stream from the *initial* key of this
// source, independent of how many values have been drawn from it. That makes
// per-trial streams stable: RandomSource(seed).substream(g).substream(t) is
// the same stream no matter what else ran before.
class RandomSource {
 public:
  explicit RandomSource(std::uint64_t seed);

  // Rebuilds the exact stream identified by a key previously obtained from
  // stream_key() (e.g. the seed column of a trial record).
  static RandomSource from_stream_key(std::uint64_t key);

  std::uint64_t next_u64();

  // Uniform on [0, 1), 53-bit resolution.
  double uniform01();

  // Uniform on [lo, hi).
  double uniform(double lo, double hi);

  // Standard normal deviate; consumes exactly one counter step.
  double normal();

  // Child stream derived from (initial key, id).
  RandomSource substream(std::uint64_t id) const;
  RandomSource substream(std::uint64_t a, std::uint64_t b) const;

  std::uint64_t stream_key() const { return key_; }

 private:
  struct FromKey {};
  RandomSource(FromKey, std::uint64_t key) : key_(key) {}

  std::uint64_t key_ = 0;
  std::uint64_t counter_ = 0;
};

// Quantile of the standard normal distribution (AS241, double precision).
// Domain (0, 1), exact arithmetic except for one sqrt/log in the tails.
double normal_quantile(double p);

}  // namespace privstat
