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

#ifndef ENVELOPES_PRIORS_HPP_
#define ENVELOPES_PRIORS_HPP_

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "envelopes/amount.hpp"
#include "envelopes/rng.hpp"

namespace envelopes {

class TrialRng;

// Broome's prior: the smaller amount is 2^n with probability
// p(n) = 2^n / 3^(n+1) = (1/3) * (2/3)^n, n = 0, 1, 2, ...
// Proper (the masses sum to 1) yet with infinite mean, which is exactly
// what makes "switch whatever you see" come out of a legitimate prior.
Rational broome_pmf(long n);                 // throws NegativeIndex
Rational broome_cdf(long n);                 // 1 - (2/3)^(n+1), exact
Rational broome_partial_sum(long n_terms);   // sum of the first n_terms masses
Amount broome_smaller_amount(long n);        // 2^n

struct PriorAtom {
  Amount x;    // a possible value of the smaller amount, > 0
  Rational w;  // its probability mass, >= 0
};

// Probability law of the smaller amount X in the discrete setting.
//
// Two real families are supported: finite-support laws given atom by atom,
// and the Broome law, whose infinitely many atoms are carried analytically
// (closed-form pmf and geometric tail) so that properness checks and
// sampling stay exact. A third kind exists purely as a diagnostic: the
// "uniform over all powers of two" non-law, which assigns every point mass
// zero and is rejected by every consumer.
class DiscretePrior {
 public:
  enum class Kind { kFinite, kBroome, kImproperUniform };

  // Atoms must be distinct and positive with nonnegative weights; total
  // mass above 1 throws MassExceedsOne. Atoms are kept sorted by value.
  static DiscretePrior finite(std::vector<PriorAtom> atoms);
  static DiscretePrior broome();
  static DiscretePrior improper_uniform_powers_of_two();

  Kind kind() const { return kind_; }
  const std::string& label() const { return label_; }
  bool finite_support() const { return kind_ == Kind::kFinite; }

  // pmf at an arbitrary point; zero off the support.
  Rational weight_at(const Amount& x) const;
  // Explicit weights plus analytic tail, exact.
  Rational total_mass() const;
  bool proper() const;

  // Sorted finite atoms; empty for the analytic kinds.
  const std::vector<PriorAtom>& atoms() const { return atoms_; }

 private:
  friend Amount sample_smaller(const DiscretePrior& prior, TrialRng& rng);

  DiscretePrior(Kind kind, std::string label, std::vector<PriorAtom> atoms);

  // k <= bound picks the atom, for a dyadic draw u = k/2^64: bound is
  // ceil(cdf * 2^64) - 1, so the comparison is the exact inverse CDF.
  struct CdfStep {
    std::uint64_t bound;
    std::uint32_t atom;
  };

  Kind kind_;
  std::string label_;
  std::vector<PriorAtom> atoms_;      // finite kind only
  std::vector<Rational> cumulative_;  // prefix sums of atom weights
  std::vector<CdfStep> inverse_cdf_;  // positive-mass atoms only
};

struct ProperCheck {
  bool proper;
  Rational total_mass;
};

// Exact properness check: proper iff the total mass is exactly 1.
// Throws MassExceedsOne if the mass somehow exceeds 1.
ProperCheck check_proper(const DiscretePrior& prior);

// Produces an observable amount a whose posterior split is not (1/2, 1/2),
// demonstrating that "the other envelope is equally likely to hold a/2 or
// 2a, whatever a" cannot hold under any proper prior (it would force
// p(n) = p(n-1) for all n). Witnesses where both a and a/2 carry mass are
// preferred; the scan falls back to support boundaries, where the split
// degenerates to (1, 0) or (0, 1). Throws ImproperPrior when the prior is
// not proper.
Amount find_half_half_violation(const DiscretePrior& prior);

// Draws the smaller amount X by exact inverse CDF: the uniform variate is
// the dyadic k/2^64 and every comparison against the CDF is rational, so
// identical rng streams give identical samples on every platform.
// Throws ImproperPrior unless the prior is proper.
Amount sample_smaller(const DiscretePrior& prior, TrialRng& rng);

// Prior density handle for the continuous setting: f evaluates pointwise,
// integrates to one by the constructor's contract (spot-checked in tests,
// not enforced pointwise), and an optional survival function S(x) = P(X > x)
// rides along when a closed form exists.
class ContinuousPrior {
 public:
  using RealFn = std::function<double(double)>;

  // support_hi > 0 bounds the support when known (e.g. a uniform on (0, M]);
  // 0 means unbounded. If a survival function is given it is validated to
  // be nonincreasing on a sample grid.
  ContinuousPrior(std::string label, RealFn density,
                  std::optional<RealFn> survival = std::nullopt,
                  double support_hi = 0.0);

  static ContinuousPrior exponential(double rate = 1.0);
  static ContinuousPrior uniform_on(double upper);  // density 1/upper on (0, upper]

  const std::string& label() const { return label_; }
  double density(double x) const { return density_(x); }
  bool has_survival() const { return survival_.has_value(); }
  double survival(double x) const { return (*survival_)(x); }
  double support_hi() const { return support_hi_; }

 private:
  std::string label_;
  RealFn density_;
  std::optional<RealFn> survival_;
  double support_hi_;
};

// f(x) for x > 0; throws NonPositivePoint otherwise.
double density_at(const ContinuousPrior& prior, double x);

// Trapezoid rule on a log-spaced grid over [x_lo, x_hi]; the normalization
// spot check used by tests. Defaults resolve the grid from the prior's
// support hint.
double integrate_density(const ContinuousPrior& prior, double x_lo = 0.0,
                         double x_hi = 0.0, int points = 40001);

}  // namespace envelopes

#endif  // ENVELOPES_PRIORS_HPP_
