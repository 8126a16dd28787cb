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

#include "envelopes/priors.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "doctest.h"
#include "oracle_helpers.hpp"

namespace envelopes {
namespace {

DiscretePrior uniform_124() {
  return DiscretePrior::finite({{Amount(1), Rational(1, 3)},
                                {Amount(2), Rational(1, 3)},
                                {Amount(4), Rational(1, 3)}});
}

TEST_CASE("broome pmf values") {
  CHECK(broome_pmf(0) == Rational(1, 3));
  CHECK(broome_pmf(1) == Rational(2, 9));
  CHECK(broome_pmf(5) == Rational(32, 729));
  CHECK_THROWS_AS(broome_pmf(-1), NegativeIndex);
}

TEST_CASE("broome partial sums are exactly 1 - (2/3)^N") {
  Rational two_thirds_pow = 1;  // independent running product
  for (long n_terms = 0; n_terms <= 64; ++n_terms) {
    CHECK(broome_partial_sum(n_terms) == Rational(1) - two_thirds_pow);
    two_thirds_pow *= Rational(2, 3);
  }
  // And the partial sums really are the accumulated pmf values.
  Rational acc = 0;
  for (long n = 0; n < 64; ++n) acc += broome_pmf(n);
  CHECK(acc == broome_partial_sum(64));
}

TEST_CASE("check_proper") {
  CHECK(check_proper(DiscretePrior::broome()).proper);
  CHECK(check_proper(DiscretePrior::broome()).total_mass == 1);

  const DiscretePrior point =
      DiscretePrior::finite({{Amount(5), Rational(1)}});
  CHECK(check_proper(point).proper);

  const DiscretePrior deficient = DiscretePrior::finite(
      {{Amount(1), Rational(1, 2)}, {Amount(2), Rational(1, 4)}});
  const ProperCheck check = check_proper(deficient);
  CHECK_FALSE(check.proper);
  CHECK(check.total_mass == Rational(3, 4));

  CHECK_THROWS_AS(
      DiscretePrior::finite(
          {{Amount(1), Rational(3, 4)}, {Amount(2), Rational(1, 2)}}),
      MassExceedsOne);
}

TEST_CASE("finite priors validate their atoms") {
  CHECK_THROWS_AS(DiscretePrior::finite({{Amount(1), Rational(1, 2)},
                                         {Amount(1), Rational(1, 2)}}),
                  MassExceedsOne);  // duplicate atom
  CHECK_THROWS_AS(DiscretePrior::finite({{Amount(0), Rational(1)}}),
                  NonPositiveAmount);
}

TEST_CASE("the improper uniform over powers of two is pure diagnostic") {
  const DiscretePrior improper =
      DiscretePrior::improper_uniform_powers_of_two();
  const ProperCheck check = check_proper(improper);
  CHECK_FALSE(check.proper);
  CHECK(check.total_mass == 0);
  CHECK(improper.weight_at(Amount(8)) == 0);

  TrialRng rng(1, 0);
  CHECK_THROWS_AS(sample_smaller(improper, rng), ImproperPrior);
  CHECK_THROWS_AS(find_half_half_violation(improper), ImproperPrior);
}

TEST_CASE("half-half violation witnesses from the worked examples") {
  const DiscretePrior point = DiscretePrior::finite({{Amount(1), Rational(1)}});
  CHECK(find_half_half_violation(point) == Amount(1));  // split is (1, 0)

  // Broome: first interior observation, split (2/5, 3/5).
  CHECK(find_half_half_violation(DiscretePrior::broome()) == Amount(2));

  // Uniform on {1,2,4}: every interior split is exactly (1/2, 1/2); only
  // the boundaries violate, and both 1 and 8 qualify.
  const Amount witness = find_half_half_violation(uniform_124());
  const auto violations = testing::enumerate_half_half_violations(uniform_124());
  CHECK(std::count(violations.begin(), violations.end(), witness) == 1);
  CHECK(violations.size() == 2);
}

TEST_CASE("every proper dyadic prior yields a valid witness") {
  TrialRng gen(321, 0);
  for (int trial = 0; trial < 200; ++trial) {
    const DiscretePrior prior = testing::random_dyadic_prior(gen);
    const Amount witness = find_half_half_violation(prior);
    const Rational up = prior.weight_at(witness);
    const Rational down = prior.weight_at(witness.halved());
    CHECK(up + down > 0);  // attainable
    CHECK(up != down);     // split differs from (1/2, 1/2)
  }
}

TEST_CASE("improper priors cannot be sampled") {
  const DiscretePrior deficient = DiscretePrior::finite(
      {{Amount(1), Rational(1, 2)}, {Amount(2), Rational(1, 4)}});
  TrialRng rng(3, 0);
  CHECK_THROWS_AS(sample_smaller(deficient, rng), ImproperPrior);
  CHECK_THROWS_AS(find_half_half_violation(deficient), ImproperPrior);
}

TEST_CASE("a point mass always samples its point") {
  const DiscretePrior point = DiscretePrior::finite({{Amount(5), Rational(1)}});
  TrialRng rng(17, 0);
  for (int i = 0; i < 200; ++i) CHECK(sample_smaller(point, rng) == Amount(5));
}

TEST_CASE("broome sampling matches the closed-form cdf") {
  const DiscretePrior broome = DiscretePrior::broome();
  const std::uint64_t n = 1000000;
  std::uint64_t zeros = 0;
  std::map<long, std::uint64_t> counts;
  for (std::uint64_t t = 0; t < n; ++t) {
    TrialRng rng(99, t);
    const Amount x = sample_smaller(broome, rng);
    // Every sample is a power of two.
    const Rational& v = x.value();
    REQUIRE(denominator(v) == 1);
    const unsigned bit = boost::multiprecision::msb(numerator(v));
    REQUIRE((BigInt(1) << bit) == numerator(v));
    ++counts[static_cast<long>(bit)];
    if (bit == 0) ++zeros;
  }

  const double freq0 = static_cast<double>(zeros) / static_cast<double>(n);
  CHECK(std::abs(freq0 - 1.0 / 3.0) <=
        testing::three_sigma_frequency(1.0 / 3.0, static_cast<double>(n)));

  // Chi-square over classes n = 0..10 plus the tail, fixed seed.
  std::vector<std::uint64_t> observed(12, 0);
  for (const auto& [index, count] : counts) {
    observed[index <= 10 ? static_cast<std::size_t>(index) : 11] += count;
  }
  std::vector<double> expected;
  double head = 0.0;
  for (long i = 0; i <= 10; ++i) {
    expected.push_back(rational_to_double(broome_pmf(i)));
    head += expected.back();
  }
  expected.push_back(1.0 - head);
  // 99.9% quantile of chi-square with 11 degrees of freedom.
  CHECK(testing::chi_square(observed, expected, n) < 31.264);
}

TEST_CASE("uniform {1,2} sampling has mean 3/2") {
  const DiscretePrior prior = DiscretePrior::finite(
      {{Amount(1), Rational(1, 2)}, {Amount(2), Rational(1, 2)}});
  const std::uint64_t n = 1000000;
  std::uint64_t twos = 0;
  for (std::uint64_t t = 0; t < n; ++t) {
    TrialRng rng(4242, t);
    if (sample_smaller(prior, rng) == Amount(2)) ++twos;
  }
  const double mean =
      1.0 + static_cast<double>(twos) / static_cast<double>(n);
  // sd of the sample mean is 0.5 / sqrt(n).
  CHECK(std::abs(mean - 1.5) <= 3.0 * 0.5 / std::sqrt(static_cast<double>(n)));
}

TEST_CASE("finite sampling reproduces the weights") {
  const DiscretePrior prior = DiscretePrior::finite({
      {Amount::parse("1/2"), Rational(1, 6)},
      {Amount(3), Rational(1, 2)},
      {Amount(8), Rational(1, 3)},
  });
  const std::uint64_t n = 200000;
  std::map<std::string, std::uint64_t> counts;
  for (std::uint64_t t = 0; t < n; ++t) {
    TrialRng rng(5150, t);
    ++counts[sample_smaller(prior, rng).str()];
  }
  for (const PriorAtom& atom : prior.atoms()) {
    const double p = rational_to_double(atom.w);
    const double freq =
        static_cast<double>(counts[atom.x.str()]) / static_cast<double>(n);
    CHECK(std::abs(freq - p) <=
          testing::three_sigma_frequency(p, static_cast<double>(n)));
  }
}

TEST_CASE("densities evaluate pointwise") {
  const ContinuousPrior exp1 = ContinuousPrior::exponential();
  CHECK(density_at(exp1, 1e-12) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(density_at(exp1, 1.0) == std::exp(-1.0));
  CHECK_THROWS_AS(density_at(exp1, 0.0), NonPositivePoint);
  CHECK_THROWS_AS(density_at(exp1, -1.0), NonPositivePoint);

  const ContinuousPrior flat = ContinuousPrior::uniform_on(10.0);
  CHECK(density_at(flat, 10.0) == 0.1);
  CHECK(density_at(flat, 10.5) == 0.0);
}

TEST_CASE("densities integrate to one (trapezoid on a log grid)") {
  CHECK(integrate_density(ContinuousPrior::exponential(), 1e-18, 60.0) ==
        doctest::Approx(1.0).epsilon(1e-6));
  CHECK(integrate_density(ContinuousPrior::uniform_on(10.0)) ==
        doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("survival handles must be nonincreasing") {
  CHECK_THROWS_AS(
      ContinuousPrior("bad", [](double) { return 1.0; },
                      [](double z) { return z / (1.0 + z); }),  // increasing
      NonPositivePoint);
}

}  // namespace
}  // namespace envelopes
