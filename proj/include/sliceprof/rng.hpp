// Copyright 2026 The sliceprof Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <random>

namespace sliceprof {

/// SplitMix64 finalizer. Used to derive well-separated stream seeds.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Seed of stream `stream` (and optional sub-stream) of a run seeded with
/// `base`. Stream seeds are a pure function of their arguments, so any
/// stream can be regenerated independently of the others.
constexpr std::uint64_t stream_seed(std::uint64_t base, std::uint64_t stream,
                                    std::uint64_t substream = 0) {
  return splitmix64(splitmix64(splitmix64(base) ^ stream) ^ (substream * 0xD1B54A32D192ED03ULL));
}

/// Portable random source: std::mt19937_64 (whose output sequence is fixed by
/// the standard) with distributions implemented here rather than taken from
/// <random>, whose algorithms differ between standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform integer on [0, n). Unbiased (rejection on the tail).
  std::uint64_t uniform_index(std::uint64_t n) {
    if (n <= 1) return 0;
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % n;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % n;
  }

  /// Exponential with the given mean; 0 when mean <= 0.
  double exponential(double mean) {
    if (!(mean > 0.0)) return 0.0;
    return -mean * std::log1p(-uniform01());
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace sliceprof
