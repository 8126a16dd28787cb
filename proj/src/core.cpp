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

#include "envelopes/core.hpp"

namespace envelopes {

EnvelopePair make_pair(const Amount& x) {
  if (!x.positive()) {
    throw NonPositiveAmount("envelope pair needs a positive smaller amount, got " +
                            x.str());
  }
  return EnvelopePair(x, x.doubled());
}

Assignment deal(const EnvelopePair& pair, bool fair_bit) {
  return Assignment{pair, fair_bit};
}

Amount naive_switch_estimate(const Amount& a) {
  if (!a.positive()) {
    throw NonPositiveAmount("observed amount must be positive, got " + a.str());
  }
  return a.scaled(Rational(5, 4));
}

Amount pair_conditional_expectation(const Amount& x) {
  if (!x.positive()) {
    throw NonPositiveAmount("smaller amount must be positive, got " + x.str());
  }
  return x.scaled(Rational(3, 2));
}

}  // namespace envelopes
