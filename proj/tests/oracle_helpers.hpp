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

// Test-only oracles and generators. These stay independent of the library
// paths they check: enumeration instead of closed forms, direct formula
// evaluation instead of shared helpers.

#ifndef ENVELOPES_TESTS_ORACLE_HELPERS_HPP_
#define ENVELOPES_TESTS_ORACLE_HELPERS_HPP_

#include <cmath>
#include <set>
#include <vector>

#include "envelopes/priors.hpp"
#include "envelopes/rng.hpp"

namespace envelopes::testing {

// 3-sigma band for an empirical frequency of n Bernoulli(p) trials.
inline double three_sigma_frequency(double p, double n) {
  return 3.0 * std::sqrt(p * (1.0 - p) / n);
}

// Pearson chi-square statistic for observed counts against expected
// probabilities.
inline double chi_square(const std::vector<std::uint64_t>& observed,
                         const std::vector<double>& expected_probability,
                         std::uint64_t n) {
  double stat = 0.0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    const double expected = expected_probability[i] * static_cast<double>(n);
    const double diff = static_cast<double>(observed[i]) - expected;
    stat += diff * diff / expected;
  }
  return stat;
}

// Random proper finite prior on a dyadic grid {base * 2^j}: distinct
// exponents, positive integer weights normalized by their exact sum.
inline DiscretePrior random_dyadic_prior(TrialRng& rng, int max_atoms = 6) {
  static const Rational kBases[] = {Rational(1), Rational(1, 2), Rational(3),
                                    Rational(5, 4)};
  const Rational base = kBases[rng.next_u64() % 4];
  const int k = 1 + static_cast<int>(rng.next_u64() % max_atoms);

  std::set<int> exponents;
  while (static_cast<int>(exponents.size()) < k) {
    exponents.insert(static_cast<int>(rng.next_u64() % 10));
  }

  std::vector<Rational> raw;
  Rational total = 0;
  for (std::size_t i = 0; i < exponents.size(); ++i) {
    raw.emplace_back(1 + rng.next_u64() % 100);
    total += raw.back();
  }

  std::vector<PriorAtom> atoms;
  std::size_t slot = 0;
  for (int j : exponents) {
    atoms.push_back(
        PriorAtom{Amount(base * Rational(BigInt(1) << j)), raw[slot++] / total});
  }
  return DiscretePrior::finite(std::move(atoms));
}

// Random proper finite prior with arbitrary rational support (not
// necessarily a dyadic grid).
inline DiscretePrior random_finite_prior(TrialRng& rng, int max_atoms = 6) {
  const int k = 1 + static_cast<int>(rng.next_u64() % max_atoms);
  std::set<Rational> support;
  while (static_cast<int>(support.size()) < k) {
    const BigInt num(1 + rng.next_u64() % 40);
    const BigInt den(1 + rng.next_u64() % 8);
    support.insert(Rational(num, den));
  }
  std::vector<Rational> raw;
  Rational total = 0;
  for (int i = 0; i < k; ++i) {
    raw.emplace_back(1 + rng.next_u64() % 100);
    total += raw.back();
  }
  std::vector<PriorAtom> atoms;
  std::size_t slot = 0;
  for (const Rational& x : support) {
    atoms.push_back(PriorAtom{Amount(x), raw[slot++] / total});
  }
  return DiscretePrior::finite(std::move(atoms));
}

// Picks an observation with positive prior probability of occurring:
// either a support point (seen as the smaller amount) or its double.
inline Amount random_attainable_observation(const DiscretePrior& prior,
                                            TrialRng& rng) {
  const auto& atoms = prior.atoms();
  const PriorAtom& atom = atoms[rng.next_u64() % atoms.size()];
  return rng.next_bit() ? atom.x : atom.x.doubled();
}

// Enumeration oracle for the half-half impossibility: every candidate
// observation in support ∪ 2*support whose posterior split differs from
// (1/2, 1/2), straight from the prior weights.
inline std::vector<Amount> enumerate_half_half_violations(
    const DiscretePrior& prior) {
  std::set<Rational> candidate_values;
  for (const PriorAtom& atom : prior.atoms()) {
    candidate_values.insert(atom.x.value());
    candidate_values.insert(atom.x.value() * 2);
  }
  std::vector<Amount> violations;
  for (const Rational& v : candidate_values) {
    const Amount a(v);
    const Rational up = prior.weight_at(a);
    const Rational down = prior.weight_at(a.halved());
    if (up == 0 && down == 0) continue;
    if (up != down) violations.push_back(a);
  }
  return violations;
}

}  // namespace envelopes::testing

#endif  // ENVELOPES_TESTS_ORACLE_HELPERS_HPP_
