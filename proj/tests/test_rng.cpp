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

#include <doctest.h>

#include <cmath>

#include "gossipdp/rng.hpp"

using namespace gossipdp;

TEST_SUITE("rng") {

TEST_CASE("identical keys give identical streams") {
  Rng a = substream(42, Stream::noise, 3, 7);
  Rng b = substream(42, Stream::noise, 3, 7);
  for (int k = 0; k < 100; ++k) CHECK(a.next_u64() == b.next_u64());
}

TEST_CASE("different tags or ids give different streams") {
  Rng a = substream(42, Stream::noise, 3, 7);
  Rng b = substream(42, Stream::noise, 3, 8);
  Rng c = substream(42, Stream::schedule, 3, 7);
  bool all_equal_b = true, all_equal_c = true;
  Rng a2 = a;
  for (int k = 0; k < 16; ++k) {
    const std::uint64_t va = a.next_u64();
    if (va != b.next_u64()) all_equal_b = false;
  }
  for (int k = 0; k < 16; ++k) {
    if (a2.next_u64() != c.next_u64()) all_equal_c = false;
  }
  CHECK_FALSE(all_equal_b);
  CHECK_FALSE(all_equal_c);
}

TEST_CASE("uniform01 stays in [0, 1) and covers the range") {
  Rng rng(123);
  double lo = 1.0, hi = 0.0;
  for (int k = 0; k < 100000; ++k) {
    const double u = rng.uniform01();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    lo = std::min(lo, u);
    hi = std::max(hi, u);
  }
  CHECK(lo < 0.01);
  CHECK(hi > 0.99);
}

TEST_CASE("normal draws have near-standard moments") {
  Rng rng(7);
  const int count = 200000;
  double sum = 0.0, sum_sq = 0.0;
  for (int k = 0; k < count; ++k) {
    const double z = rng.normal();
    sum += z;
    sum_sq += z * z;
  }
  const double mean = sum / count;
  const double var = sum_sq / count - mean * mean;
  CHECK(std::abs(mean) < 0.01);
  CHECK(std::abs(var - 1.0) < 0.02);
}

}  // TEST_SUITE
