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

#ifndef ENVELOPES_RNG_HPP_
#define ENVELOPES_RNG_HPP_

#include <array>
#include <cstdint>

namespace envelopes {

// Philox-4x32-10 counter-based generator (Salmon et al., SC'11).
//
// A stream is identified by (seed, stream); the block counter advances
// within a stream. Distinct stream ids give statistically independent
// sequences, so Monte Carlo code builds TrialRng(seed, t) for trial t and
// gets the same draws no matter how trials are scheduled across threads.
// Integer-only, hence bit-identical on every platform.
class TrialRng {
 public:
  TrialRng(std::uint64_t seed, std::uint64_t stream);

  std::uint64_t next_u64();
  // One fair bit; bits come lsb-first out of buffered 64-bit words.
  bool next_bit();
  // Uniform in [0, 1) with 53 random bits.
  double next_unit();

  // Raw Philox block for one (key, counter) input; exposed for known-answer
  // tests against the published vectors.
  static std::array<std::uint32_t, 4> block(
      const std::array<std::uint32_t, 2>& key,
      const std::array<std::uint32_t, 4>& counter);

 private:
  void refill();

  std::array<std::uint32_t, 2> key_;
  std::array<std::uint32_t, 4> counter_;
  std::array<std::uint32_t, 4> out_{};
  int out_pos_ = 4;  // words consumed from out_
  std::uint64_t bit_word_ = 0;
  int bits_left_ = 0;
};

}  // namespace envelopes

#endif  // ENVELOPES_RNG_HPP_
