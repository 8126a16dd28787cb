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

namespace envelopes {
namespace {

constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u;
constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57u;
constexpr std::uint32_t kPhiloxW0 = 0x9E3779B9u;
constexpr std::uint32_t kPhiloxW1 = 0xBB67AE85u;

inline void mul_hi_lo(std::uint32_t a, std::uint32_t b, std::uint32_t* hi,
                      std::uint32_t* lo) {
  const std::uint64_t product = static_cast<std::uint64_t>(a) * b;
  *hi = static_cast<std::uint32_t>(product >> 32);
  *lo = static_cast<std::uint32_t>(product);
}

inline std::array<std::uint32_t, 4> round_once(
    const std::array<std::uint32_t, 4>& ctr,
    const std::array<std::uint32_t, 2>& key) {
  std::uint32_t hi0, lo0, hi1, lo1;
  mul_hi_lo(kPhiloxM0, ctr[0], &hi0, &lo0);
  mul_hi_lo(kPhiloxM1, ctr[2], &hi1, &lo1);
  return {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
}

}  // namespace

std::array<std::uint32_t, 4> TrialRng::block(
    const std::array<std::uint32_t, 2>& key,
    const std::array<std::uint32_t, 4>& counter) {
  std::array<std::uint32_t, 4> state = counter;
  std::array<std::uint32_t, 2> k = key;
  for (int r = 0; r < 10; ++r) {
    if (r > 0) {
      k[0] += kPhiloxW0;
      k[1] += kPhiloxW1;
    }
    state = round_once(state, k);
  }
  return state;
}

TrialRng::TrialRng(std::uint64_t seed, std::uint64_t stream)
    : key_{static_cast<std::uint32_t>(seed),
           static_cast<std::uint32_t>(seed >> 32)},
      counter_{0, 0, static_cast<std::uint32_t>(stream),
               static_cast<std::uint32_t>(stream >> 32)} {}

void TrialRng::refill() {
  out_ = block(key_, counter_);
  out_pos_ = 0;
  if (++counter_[0] == 0) ++counter_[1];  // 64-bit block index
}

std::uint64_t TrialRng::next_u64() {
  if (out_pos_ >= 3) refill();
  const std::uint64_t lo = out_[out_pos_];
  const std::uint64_t hi = out_[out_pos_ + 1];
  out_pos_ += 2;
  return lo | (hi << 32);
}

bool TrialRng::next_bit() {
  if (bits_left_ == 0) {
    bit_word_ = next_u64();
    bits_left_ = 64;
  }
  const bool b = (bit_word_ & 1u) != 0;
  bit_word_ >>= 1;
  --bits_left_;
  return b;
}

double TrialRng::next_unit() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

}  // namespace envelopes
