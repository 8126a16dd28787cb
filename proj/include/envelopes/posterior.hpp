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

#ifndef ENVELOPES_POSTERIOR_HPP_
#define ENVELOPES_POSTERIOR_HPP_

#include <string>

#include "envelopes/amount.hpp"
#include "envelopes/priors.hpp"

namespace envelopes {

enum class Decision { kSwitch, kKeep, kIndifferent };

const char* to_string(Decision d);

// The conditional law of the other envelope given the observation a:
// p_up = P(B = 2a | A = a), p_down = P(B = a/2 | A = a). Exact rationals in
// the discrete path; doubles (summing to 1 within 1e-12) in the continuous
// path.
class PosteriorSplit {
 public:
  PosteriorSplit(Rational up, Rational down);  // exact path
  PosteriorSplit(double up, double down);      // density path

  bool exact() const { return exact_; }
  double up() const { return up_f_; }
  double down() const { return down_f_; }
  const Rational& up_exact() const;
  const Rational& down_exact() const;

 private:
  bool exact_;
  Rational up_r_;
  Rational down_r_;
  double up_f_;
  double down_f_;
};

// Discrete observation a: the other envelope holds 2a with posterior weight
// p(a) and a/2 with weight p(a/2). Throws UnattainableObservation when both
// weights vanish (conditioning on a null event).
PosteriorSplit split_discrete(const DiscretePrior& prior, const Amount& a);

// Continuous observation a: weights 2f(a) and f(a/2). The factor 2 is the
// Jacobian of halving the scale: observing the larger amount near a pins
// the smaller near a/2 on an interval half as long.
PosteriorSplit split_continuous(const ContinuousPrior& prior, double a);

// E[B | A = a] = p_up * 2a + p_down * a/2.
Amount conditional_expectation(const DiscretePrior& prior, const Amount& a);
double conditional_expectation(const ContinuousPrior& prior, double a);

// Expectation-maximizing rule: Switch iff p(a/2) < 2 p(a) (discrete) or
// f(a/2) < 4 f(a) (continuous); Keep on the strict reverse; Indifferent on
// equality. Always agrees with comparing conditional_expectation to a.
Decision decide_expectation(const DiscretePrior& prior, const Amount& a);
Decision decide_expectation(const ContinuousPrior& prior, double a);

// Probability-of-larger rule: maximize the chance of ending with the larger
// amount, i.e. Switch iff p_down < 1/2. Discrete: switch when a/2 is off
// the grid or p(a/2) < p(a); continuous: when f(a/2) < 2 f(a).
Decision decide_probability_of_larger(const DiscretePrior& prior,
                                      const Amount& a);
Decision decide_probability_of_larger(const ContinuousPrior& prior, double a);

}  // namespace envelopes

#endif  // ENVELOPES_POSTERIOR_HPP_
