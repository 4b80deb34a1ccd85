// Copyright 2026 The gossipdp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace gossipdp {

inline constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

// SplitMix64 finalizer.
inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::uint64_t combine64(std::uint64_t h, std::uint64_t v) {
  return mix64(h + kGolden + (v ^ (h << 6) ^ (h >> 2)));
}

// Reserved stream tags.  Every consumer of randomness derives its own
// substream from (seed, tag, ids...), so draw order never couples modules
// or loop scheduling.
enum class Stream : std::uint64_t {
  noise = 1,       // Laplace broadcasts, keyed by (learner, round)
  schedule = 2,    // communication matrices, keyed by round
  data = 3,        // synthetic dataset generation
  shuffle = 4,     // shard partitioning
  audit = 5,       // sensitivity audit trials
  comparator = 6,  // polish directions for the hindsight comparator
};

// Counter-based 64-bit generator (SplitMix64 stream).  Cheap to construct,
// so substreams are made on demand instead of shared.
class Rng {
 public:
  explicit Rng(std::uint64_t key) : state_(key) {}

  std::uint64_t next_u64() {
    state_ += kGolden;
    return mix64(state_);
  }

  // Uniform in [0, 1), 53-bit resolution.
  double uniform01() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + uniform01() * (hi - lo); }

  // Fisher-Yates helper: uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n) { return next_u64() % n; }

  // One standard normal draw (Box-Muller, no cached second value so the
  // stream position is a pure function of the call count).
  double normal() {
    double u1;
    do {
      u1 = 1.0 - uniform01();  // (0, 1]
    } while (!(u1 > 0.0));
    const double u2 = uniform01();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * std::numbers::pi * u2);
  }

 private:
  std::uint64_t state_;
};

inline Rng substream(std::uint64_t seed, Stream tag, std::uint64_t a = 0,
                     std::uint64_t b = 0) {
  std::uint64_t h = combine64(seed, static_cast<std::uint64_t>(tag));
  h = combine64(h, a);
  h = combine64(h, b);
  return Rng(h);
}

}  // namespace gossipdp
