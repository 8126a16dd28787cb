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

#ifndef ENVELOPES_CORE_HPP_
#define ENVELOPES_CORE_HPP_

#include "envelopes/amount.hpp"

namespace envelopes {

// The pair of envelope contents {x, 2x}. `smaller` is the random quantity
// usually called X, `larger` is Y = 2X, exactly.
class EnvelopePair {
 public:
  const Amount& smaller() const { return smaller_; }
  const Amount& larger() const { return larger_; }

  friend bool operator==(const EnvelopePair& a, const EnvelopePair& b) {
    return a.smaller_ == b.smaller_;
  }

 private:
  friend EnvelopePair make_pair(const Amount& x);
  EnvelopePair(Amount smaller, Amount larger)
      : smaller_(std::move(smaller)), larger_(std::move(larger)) {}

  Amount smaller_;
  Amount larger_;
};

// Builds the pair (x, 2x). Throws NonPositiveAmount unless x > 0.
EnvelopePair make_pair(const Amount& x);

// Which of envelopes A and B holds which amount of a dealt pair.
// Always {a, b} = {smaller, larger} as a multiset.
struct Assignment {
  EnvelopePair pair;
  bool a_holds_smaller;

  const Amount& a() const {
    return a_holds_smaller ? pair.smaller() : pair.larger();
  }
  const Amount& b() const {
    return a_holds_smaller ? pair.larger() : pair.smaller();
  }
};

// Assigns the pair to envelopes A/B: P(A = smaller) = 1/2 when the bit is
// fair.
Assignment deal(const EnvelopePair& pair, bool fair_bit);

// The value produced by the always-switch argument: 1/2 * 2a + 1/2 * a/2 =
// (5/4) * a. Exact, and strictly greater than a for every a > 0 — that is
// the whole puzzle.
Amount naive_switch_estimate(const Amount& a);

// E(B | X = x) = (3/2) * x: the expectation of either envelope's content
// once the pair (x, 2x) is fixed and only the deal is random.
Amount pair_conditional_expectation(const Amount& x);

}  // namespace envelopes

#endif  // ENVELOPES_CORE_HPP_
