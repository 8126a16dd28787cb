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

#ifndef ENVELOPES_STATS_HPP_
#define ENVELOPES_STATS_HPP_

#include <cstdint>
#include <string>

#include "envelopes/amount.hpp"

namespace envelopes {

// How a Monte Carlo kernel executes. Results are bit-identical either way:
// trial randomness is counter-based and the accumulators are exact, so the
// reduction order cannot show through.
enum class Execution { kSerial, kOpenMp };

// Monte Carlo aggregates. Only this summary is floating point; everything
// feeding it is exact.
struct SummaryStats {
  std::uint64_t n = 0;
  double mean = 0.0;
  double sample_variance = 0.0;
  double ci95_halfwidth = 0.0;  // 1.96 * sqrt(sample_variance / n)
  std::uint64_t seed = 0;
  std::string schema;
};

// Order-insensitive exact accumulator: rational sums make the merge
// independent of chunking and thread count, which is what makes
// (seed, n, schema) reproducible under parallel execution.
class ExactMoments {
 public:
  void add(const Rational& value) {
    ++n_;
    sum_ += value;
    sum_sq_ += value * value;
  }
  void merge(const ExactMoments& other) {
    n_ += other.n_;
    sum_ += other.sum_;
    sum_sq_ += other.sum_sq_;
  }

  std::uint64_t count() const { return n_; }
  const Rational& sum() const { return sum_; }
  // Exact mean; only meaningful when count() > 0.
  Rational exact_mean() const { return sum_ / BigInt(n_); }

  SummaryStats summarize(std::uint64_t seed, std::string schema) const;

 private:
  std::uint64_t n_ = 0;
  Rational sum_ = 0;
  Rational sum_sq_ = 0;
};

}  // namespace envelopes

#endif  // ENVELOPES_STATS_HPP_
