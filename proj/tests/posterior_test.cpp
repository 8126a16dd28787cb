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

#include "envelopes/posterior.hpp"

#include <cmath>

#include "doctest.h"
#include "envelopes/core.hpp"
#include "oracle_helpers.hpp"

namespace envelopes {
namespace {

DiscretePrior uniform_124() {
  return DiscretePrior::finite({{Amount(1), Rational(1, 3)},
                                {Amount(2), Rational(1, 3)},
                                {Amount(4), Rational(1, 3)}});
}

TEST_CASE("broome split at 2 is exactly (2/5, 3/5)") {
  const PosteriorSplit split = split_discrete(DiscretePrior::broome(), Amount(2));
  REQUIRE(split.exact());
  CHECK(split.up_exact() == Rational(2, 5));
  CHECK(split.down_exact() == Rational(3, 5));
}

TEST_CASE("broome split at 1 is certain to go up") {
  const PosteriorSplit split = split_discrete(DiscretePrior::broome(), Amount(1));
  CHECK(split.up_exact() == 1);
  CHECK(split.down_exact() == 0);
}

TEST_CASE("the top of a bounded support is certain to lose by switching") {
  const PosteriorSplit split = split_discrete(uniform_124(), Amount(8));
  CHECK(split.up_exact() == 0);
  CHECK(split.down_exact() == 1);
}

TEST_CASE("observations off the support are unattainable") {
  CHECK_THROWS_AS(split_discrete(DiscretePrior::broome(), Amount(3)),
                  UnattainableObservation);
  CHECK_THROWS_AS(
      split_discrete(DiscretePrior::improper_uniform_powers_of_two(),
                     Amount(2)),
      UnattainableObservation);
  CHECK_THROWS_AS(conditional_expectation(uniform_124(), Amount(3)),
                  UnattainableObservation);
}

TEST_CASE("continuous split under the standard exponential at a = 2") {
  const ContinuousPrior prior = ContinuousPrior::exponential();
  const PosteriorSplit split = split_continuous(prior, 2.0);
  // Direct evaluation: 2 f(2) / (f(1) + 2 f(2)) with f(x) = exp(-x).
  const double expected_up =
      2.0 * std::exp(-2.0) / (std::exp(-1.0) + 2.0 * std::exp(-2.0));
  CHECK_FALSE(split.exact());
  CHECK(split.up() == doctest::Approx(expected_up).epsilon(1e-15));
  CHECK(split.up() == doctest::Approx(0.4238831).epsilon(1e-6));
  CHECK(split.up() + split.down() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("flat density region gives the (2/3, 1/3) split") {
  const ContinuousPrior flat = ContinuousPrior::uniform_on(10.0);
  // Both a and a/2 inside the support: equal densities.
  const PosteriorSplit split = split_continuous(flat, 6.0);
  CHECK(split.up() == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(split.down() == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("vanishing density at a forces the split down") {
  const ContinuousPrior flat = ContinuousPrior::uniform_on(10.0);
  // a over the support top, a/2 inside: f(a) = 0, f(a/2) > 0.
  const PosteriorSplit split = split_continuous(flat, 12.0);
  CHECK(split.up() == 0.0);
  CHECK(split.down() == 1.0);
  CHECK_THROWS_AS(split_continuous(flat, 100.0), UnattainableObservation);
}

TEST_CASE("broome conditional expectations from the worked example") {
  const DiscretePrior broome = DiscretePrior::broome();
  CHECK(conditional_expectation(broome, Amount(4)) == Amount::parse("22/5"));
  CHECK(conditional_expectation(broome, Amount(1)) == Amount(2));
}

TEST_CASE("broome: E[B | A = 2^n] = (11/10) 2^n exactly for n = 1..20") {
  const DiscretePrior broome = DiscretePrior::broome();
  for (long n = 1; n <= 20; ++n) {
    const Amount a = broome_smaller_amount(n);
    CHECK(conditional_expectation(broome, a).value() ==
          a.value() * Rational(11, 10));
  }
}

TEST_CASE("a point mass makes the other envelope certain") {
  const DiscretePrior point = DiscretePrior::finite({{Amount(7), Rational(1)}});
  CHECK(conditional_expectation(point, Amount(7)) == Amount(14));
}

TEST_CASE("continuous conditional expectation matches the split") {
  const ContinuousPrior prior = ContinuousPrior::exponential();
  const PosteriorSplit split = split_continuous(prior, 2.0);
  CHECK(conditional_expectation(prior, 2.0) ==
        doctest::Approx(split.up() * 4.0 + split.down() * 1.0).epsilon(1e-15));
}

TEST_CASE("expectation rule on the broome prior always switches") {
  const DiscretePrior broome = DiscretePrior::broome();
  for (long n = 0; n <= 20; ++n) {
    CHECK(decide_expectation(broome, broome_smaller_amount(n)) ==
          Decision::kSwitch);
  }
}

TEST_CASE("expectation rule keeps a certain loss") {
  CHECK(decide_expectation(uniform_124(), Amount(8)) == Decision::kKeep);
}

TEST_CASE("expectation rule is indifferent exactly at p(a/2) = 2 p(a)") {
  const DiscretePrior prior = DiscretePrior::finite(
      {{Amount(1), Rational(2, 3)}, {Amount(2), Rational(1, 3)}});
  CHECK(decide_expectation(prior, Amount(2)) == Decision::kIndifferent);
  CHECK(conditional_expectation(prior, Amount(2)) == Amount(2));
}

TEST_CASE("continuous expectation rule: f(a/2) against 4 f(a)") {
  const ContinuousPrior prior = ContinuousPrior::exponential();
  // exp(a/2) < 4 switches; the boundary sits at a = 2 ln 4.
  CHECK(decide_expectation(prior, 2.0) == Decision::kSwitch);
  CHECK(decide_expectation(prior, 3.0) == Decision::kKeep);
  CHECK(decide_expectation(prior, 2.0 * std::log(4.0)) ==
        Decision::kIndifferent);
}

TEST_CASE("probability-of-larger rule on worked cases") {
  // Broome at 2: p(1) = 1/3 beats p(2) = 2/9, so keeping is likelier to win.
  CHECK(decide_probability_of_larger(DiscretePrior::broome(), Amount(2)) ==
        Decision::kKeep);
  // Odd observation: a/2 is off the grid, switching is certain to win.
  CHECK(decide_probability_of_larger(DiscretePrior::broome(), Amount(1)) ==
        Decision::kSwitch);
  const DiscretePrior uniform_12 = DiscretePrior::finite(
      {{Amount(1), Rational(1, 2)}, {Amount(2), Rational(1, 2)}});
  CHECK(decide_probability_of_larger(uniform_12, Amount(2)) ==
        Decision::kIndifferent);
  // Continuous flat stretch: f(a/2) = f(a) < 2 f(a).
  CHECK(decide_probability_of_larger(ContinuousPrior::uniform_on(10.0), 6.0) ==
        Decision::kSwitch);
}

TEST_CASE("splits sum to one exactly over random priors and observations") {
  TrialRng gen(777, 0);
  for (int i = 0; i < 300; ++i) {
    const DiscretePrior prior = testing::random_finite_prior(gen);
    const Amount a = testing::random_attainable_observation(prior, gen);
    const PosteriorSplit split = split_discrete(prior, a);
    CHECK(split.up_exact() + split.down_exact() == 1);
    CHECK(split.up_exact() >= 0);
    CHECK(split.down_exact() >= 0);
  }
}

TEST_CASE("switch decisions agree with the conditional expectation") {
  TrialRng gen(778, 0);
  for (int i = 0; i < 300; ++i) {
    const DiscretePrior prior = testing::random_finite_prior(gen);
    const Amount a = testing::random_attainable_observation(prior, gen);
    const Decision d = decide_expectation(prior, a);
    const Amount e = conditional_expectation(prior, a);
    if (e > a) CHECK(d == Decision::kSwitch);
    if (e < a) CHECK(d == Decision::kKeep);
    if (e == a) CHECK(d == Decision::kIndifferent);

    const PosteriorSplit split = split_discrete(prior, a);
    const Decision larger = decide_probability_of_larger(prior, a);
    if (split.down_exact() < Rational(1, 2)) CHECK(larger == Decision::kSwitch);
    if (split.down_exact() > Rational(1, 2)) CHECK(larger == Decision::kKeep);
    if (split.down_exact() == Rational(1, 2)) {
      CHECK(larger == Decision::kIndifferent);
    }
  }
}

TEST_CASE("law of total expectation: E[B] = (3/2) E[X] exactly") {
  TrialRng gen(779, 0);
  for (int i = 0; i < 100; ++i) {
    const DiscretePrior prior = testing::random_finite_prior(gen);

    // Collect every attainable observation: support and its doubles.
    std::set<Rational> observations;
    Rational e_smaller = 0;
    for (const PriorAtom& atom : prior.atoms()) {
      observations.insert(atom.x.value());
      observations.insert(atom.x.value() * 2);
      e_smaller += atom.w * atom.x.value();
    }

    Rational e_b = 0;
    for (const Rational& v : observations) {
      const Amount a{Rational(v)};
      // P(A = a) = (p(a) + p(a/2)) / 2.
      const Rational p_a =
          (prior.weight_at(a) + prior.weight_at(a.halved())) / 2;
      if (p_a == 0) continue;
      e_b += p_a * conditional_expectation(prior, a).value();
    }
    CHECK(e_b == Rational(3, 2) * e_smaller);
  }
}

TEST_CASE("an exactly even split reproduces the (5/4) a estimate") {
  const DiscretePrior uniform_12 = DiscretePrior::finite(
      {{Amount(1), Rational(1, 2)}, {Amount(2), Rational(1, 2)}});
  const PosteriorSplit split = split_discrete(uniform_12, Amount(2));
  REQUIRE(split.up_exact() == Rational(1, 2));
  CHECK(conditional_expectation(uniform_12, Amount(2)) ==
        naive_switch_estimate(Amount(2)));
}

}  // namespace
}  // namespace envelopes
