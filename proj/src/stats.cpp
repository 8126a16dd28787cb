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

#include "envelopes/stats.hpp"

#include <cmath>

namespace envelopes {

SummaryStats ExactMoments::summarize(std::uint64_t seed,
                                     std::string schema) const {
  SummaryStats s;
  s.n = n_;
  s.seed = seed;
  s.schema = std::move(schema);
  if (n_ == 0) return s;

  const BigInt n(n_);
  const Rational mean = sum_ / n;
  s.mean = rational_to_double(mean);
  if (n_ > 1) {
    // Unbiased: (sum_sq - sum^2/n) / (n - 1), carried exactly to the end.
    const Rational var = (sum_sq_ - sum_ * sum_ / n) / BigInt(n_ - 1);
    s.sample_variance = rational_to_double(var);
    s.ci95_halfwidth = 1.96 * std::sqrt(s.sample_variance / static_cast<double>(n_));
  }
  return s;
}

}  // namespace envelopes
