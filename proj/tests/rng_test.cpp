// Copyright 2026 The Envelopes Lab Authors
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

#include "envelopes/rng.hpp"

#include <vector>

#include "doctest.h"
#include "oracle_helpers.hpp"

namespace envelopes {
namespace {

TEST_CASE("philox 4x32-10 known-answer vectors") {
  // Published test vectors for the 10-round 4x32 configuration.
  CHECK(TrialRng::block({0u, 0u}, {0u, 0u, 0u, 0u}) ==
        std::array<std::uint32_t, 4>{0x6627e8d5u, 0xe169c58du, 0xbc57ac4cu,
                                     0x9b00dbd8u});
  CHECK(TrialRng::block({0xffffffffu, 0xffffffffu},
                        {0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu}) ==
        std::array<std::uint32_t, 4>{0x408f276du, 0x41c83b0eu, 0xa20bc7c6u,
                                     0x6d5451fdu});
  CHECK(TrialRng::block({0xa4093822u, 0x299f31d0u},
                        {0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u}) ==
        std::array<std::uint32_t, 4>{0xd16cfe09u, 0x94fdccebu, 0x5001e420u,
                                     0x24126ea1u});
}

TEST_CASE("identical (seed, stream) reproduces the sequence") {
  TrialRng a(42, 7);
  TrialRng b(42, 7);
  for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
}

TEST_CASE("distinct streams differ") {
  TrialRng a(42, 0);
  TrialRng b(42, 1);
  TrialRng c(43, 0);
  int differs_by_stream = 0;
  int differs_by_seed = 0;
  for (int i = 0; i < 16; ++i) {
    const std::uint64_t va = a.next_u64();
    if (va != b.next_u64()) ++differs_by_stream;
    if (va != c.next_u64()) ++differs_by_seed;
  }
  CHECK(differs_by_stream == 16);
  CHECK(differs_by_seed == 16);
}

TEST_CASE("bits are balanced") {
  TrialRng rng(7, 0);
  std::uint64_t ones = 0;
  const std::uint64_t n = 1000000;
  for (std::uint64_t i = 0; i < n; ++i) ones += rng.next_bit() ? 1 : 0;
  const double freq = static_cast<double>(ones) / static_cast<double>(n);
  CHECK(std::abs(freq - 0.5) <=
        testing::three_sigma_frequency(0.5, static_cast<double>(n)));
}

TEST_CASE("unit doubles live in [0,1) with the right mean") {
  TrialRng rng(11, 3);
  const int n = 100000;
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    const double u = rng.next_unit();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    sum += u;
  }
  // sd of the mean of n uniforms is 1/sqrt(12 n).
  const double three_sigma = 3.0 / std::sqrt(12.0 * n);
  CHECK(std::abs(sum / n - 0.5) <= three_sigma);
}

TEST_CASE("low nibbles are uniform (chi-square, fixed seed)") {
  TrialRng rng(1234, 0);
  std::vector<std::uint64_t> buckets(16, 0);
  const std::uint64_t n = 100000;
  for (std::uint64_t i = 0; i < n; ++i) ++buckets[rng.next_u64() & 15u];
  const std::vector<double> expected(16, 1.0 / 16.0);
  // 99.9% quantile of chi-square with 15 degrees of freedom.
  CHECK(testing::chi_square(buckets, expected, n) < 37.697);
}

}  // namespace
}  // namespace envelopes
