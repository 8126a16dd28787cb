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
#include <utility>

namespace envelopes {

namespace {

// n with x = 2^n (n >= 0), or nullopt if x is not such a power.
std::optional<long> power_of_two_index(const Amount& x) {
  const Rational& v = x.value();
  if (denominator(v) != 1) return std::nullopt;
  const BigInt& num = numerator(v);
  if (num <= 0) return std::nullopt;
  const unsigned bit = boost::multiprecision::msb(num);
  if ((BigInt(1) << bit) != num) return std::nullopt;
  return static_cast<long>(bit);
}

constexpr long kBroomeScanLimit = 4096;

}  // namespace

Rational broome_pmf(long n) {
  if (n < 0) throw NegativeIndex("broome_pmf index must be >= 0");
  BigInt num = BigInt(1) << n;  // 2^n
  BigInt den = 3;
  for (long i = 0; i < n; ++i) den *= 3;  // 3^(n+1)
  return Rational(num, den);
}

Rational broome_cdf(long n) {
  if (n < 0) throw NegativeIndex("broome_cdf index must be >= 0");
  return broome_partial_sum(n + 1);
}

Rational broome_partial_sum(long n_terms) {
  if (n_terms < 0) throw NegativeIndex("partial sum length must be >= 0");
  // Geometric: sum_{n<N} (1/3)(2/3)^n = 1 - (2/3)^N, kept exact.
  BigInt num = BigInt(1) << n_terms;
  BigInt den = 1;
  for (long i = 0; i < n_terms; ++i) den *= 3;
  return Rational(1) - Rational(num, den);
}

Amount broome_smaller_amount(long n) {
  if (n < 0) throw NegativeIndex("broome amount index must be >= 0");
  return Amount(Rational(BigInt(1) << n));
}

DiscretePrior::DiscretePrior(Kind kind, std::string label,
                             std::vector<PriorAtom> atoms)
    : kind_(kind), label_(std::move(label)), atoms_(std::move(atoms)) {
  Rational cum = 0;
  cumulative_.reserve(atoms_.size());
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    cum += atoms_[i].w;
    cumulative_.push_back(cum);
    if (atoms_[i].w == 0) continue;  // unreachable under any draw
    // u < cum with u = k/2^64 is k <= ceil(cum * 2^64) - 1, exactly.
    const BigInt scaled = ((numerator(cum) << 64) + denominator(cum) - 1) /
                              denominator(cum) -
                          1;
    inverse_cdf_.push_back(CdfStep{scaled.convert_to<std::uint64_t>(),
                                   static_cast<std::uint32_t>(i)});
  }
}

DiscretePrior DiscretePrior::finite(std::vector<PriorAtom> atoms) {
  for (const PriorAtom& atom : atoms) {
    if (!atom.x.positive()) {
      throw NonPositiveAmount("prior atoms must sit at positive amounts");
    }
    if (atom.w < 0) {
      throw MassExceedsOne("atom weights must be nonnegative");
    }
  }
  std::sort(atoms.begin(), atoms.end(),
            [](const PriorAtom& a, const PriorAtom& b) { return a.x < b.x; });
  Rational total = 0;
  for (size_t i = 0; i < atoms.size(); ++i) {
    if (i > 0 && atoms[i].x == atoms[i - 1].x) {
      throw MassExceedsOne("duplicate atom at x = " + atoms[i].x.str());
    }
    total += atoms[i].w;
  }
  if (total > 1) {
    throw MassExceedsOne("total mass " + rational_str(total) + " exceeds 1");
  }
  const std::string label =
      "discrete(" + std::to_string(atoms.size()) + " atoms)";
  return DiscretePrior(Kind::kFinite, label, std::move(atoms));
}

DiscretePrior DiscretePrior::broome() {
  return DiscretePrior(Kind::kBroome, "broome", {});
}

DiscretePrior DiscretePrior::improper_uniform_powers_of_two() {
  // "Equally likely to be any of infinitely many values": every point mass
  // is zero and nothing normalizes. Exists to be rejected.
  return DiscretePrior(Kind::kImproperUniform, "improper-uniform", {});
}

Rational DiscretePrior::weight_at(const Amount& x) const {
  switch (kind_) {
    case Kind::kBroome: {
      const auto n = power_of_two_index(x);
      return n ? broome_pmf(*n) : Rational(0);
    }
    case Kind::kImproperUniform:
      return 0;
    case Kind::kFinite: {
      const auto it = std::lower_bound(
          atoms_.begin(), atoms_.end(), x,
          [](const PriorAtom& atom, const Amount& v) { return atom.x < v; });
      if (it != atoms_.end() && it->x == x) return it->w;
      return 0;
    }
  }
  return 0;
}

Rational DiscretePrior::total_mass() const {
  switch (kind_) {
    case Kind::kBroome:
      return 1;  // geometric masses: the tail after N terms is (2/3)^N -> 0
    case Kind::kImproperUniform:
      return 0;
    case Kind::kFinite:
      return cumulative_.empty() ? Rational(0) : cumulative_.back();
  }
  return 0;
}

bool DiscretePrior::proper() const { return total_mass() == 1; }

ProperCheck check_proper(const DiscretePrior& prior) {
  const Rational mass = prior.total_mass();
  if (mass > 1) {
    throw MassExceedsOne("total mass " + rational_str(mass) + " exceeds 1");
  }
  return ProperCheck{mass == 1, mass};
}

Amount find_half_half_violation(const DiscretePrior& prior) {
  if (!prior.proper()) {
    throw ImproperPrior("half-half violation search needs a proper prior");
  }

  if (prior.kind() == DiscretePrior::Kind::kBroome) {
    // Adjacent masses have ratio 2/3, never 1, so the first interior
    // observation already violates: a = 2 splits (2/5, 3/5).
    for (long n = 1; n < kBroomeScanLimit; ++n) {
      if (broome_pmf(n) != broome_pmf(n - 1)) return broome_smaller_amount(n);
    }
    throw SearchFailed("no violation found in the broome scan");
  }

  // Candidate observations: the support and its doubles. An interior
  // witness (both a and a/2 carry mass, unequally) exhibits the
  // p(n) != p(n-1) failure directly; boundary witnesses degenerate to
  // certainty. The smallest support point is always a boundary witness,
  // so the fallback cannot miss.
  std::vector<Amount> candidates;
  for (const PriorAtom& atom : prior.atoms()) {
    candidates.push_back(atom.x);
    candidates.push_back(atom.x.doubled());
  }
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()),
                   candidates.end());

  const Amount* boundary = nullptr;
  for (const Amount& a : candidates) {
    const Rational up = prior.weight_at(a);
    const Rational down = prior.weight_at(a.halved());
    if (up == 0 && down == 0) continue;
    if (up > 0 && down > 0) {
      if (up != down) return a;  // interior witness
    } else if (boundary == nullptr) {
      boundary = &a;
    }
  }
  if (boundary != nullptr) return *boundary;
  throw SearchFailed("proper prior without a violation candidate");
}

namespace {

// Dyadic thresholds of the Broome CDF: entry n is ceil(CDF(n) * 2^64) - 1,
// so k <= entry n exactly means k/2^64 < 1 - (2/3)^(n+1). The table stops
// once the bound saturates at 2^64 - 1 (n around 109), past which no
// 64-bit draw can fall.
const std::vector<std::uint64_t>& broome_cdf_bounds() {
  static const std::vector<std::uint64_t> bounds = [] {
    std::vector<std::uint64_t> table;
    BigInt pow2 = 2;  // 2^(n+1)
    BigInt pow3 = 3;  // 3^(n+1)
    while (true) {
      // CDF(n) = (pow3 - pow2) / pow3.
      const BigInt scaled =
          (((pow3 - pow2) << 64) + pow3 - 1) / pow3 - 1;
      const auto bound = scaled.convert_to<std::uint64_t>();
      table.push_back(bound);
      if (bound == ~std::uint64_t{0}) break;
      pow2 <<= 1;
      pow3 *= 3;
    }
    return table;
  }();
  return bounds;
}

}  // namespace

Amount sample_smaller(const DiscretePrior& prior, TrialRng& rng) {
  if (!prior.proper()) {
    throw ImproperPrior("cannot sample an improper prior");
  }

  const std::uint64_t k = rng.next_u64();

  if (prior.kind() == DiscretePrior::Kind::kBroome) {
    const auto& bounds = broome_cdf_bounds();
    for (std::size_t n = 0; n < bounds.size(); ++n) {
      if (k <= bounds[n]) return broome_smaller_amount(static_cast<long>(n));
    }
    return broome_smaller_amount(static_cast<long>(bounds.size()));
  }

  // Finite: exact inverse CDF against the precomputed dyadic thresholds;
  // total mass 1 makes the last step's bound 2^64 - 1.
  for (const DiscretePrior::CdfStep& step : prior.inverse_cdf_) {
    if (k <= step.bound) return prior.atoms_[step.atom].x;
  }
  return prior.atoms_.back().x;
}

ContinuousPrior::ContinuousPrior(std::string label, RealFn density,
                                 std::optional<RealFn> survival,
                                 double support_hi)
    : label_(std::move(label)),
      density_(std::move(density)),
      survival_(std::move(survival)),
      support_hi_(support_hi) {
  if (survival_) {
    // Nonincreasing on a coarse log grid, with S(0+) near 1.
    double prev = (*survival_)(1e-12);
    if (prev > 1.0 + 1e-9 || prev < 0.0) {
      throw NonPositivePoint("survival function must map into [0, 1]");
    }
    for (double z = 1e-9; z <= 1e15; z *= 10.0) {
      const double s = (*survival_)(z);
      if (s > prev + 1e-12) {
        throw NonPositivePoint("survival function must be nonincreasing");
      }
      prev = s;
    }
  }
}

ContinuousPrior ContinuousPrior::exponential(double rate) {
  if (!(rate > 0)) throw NonPositivePoint("exponential rate must be > 0");
  return ContinuousPrior(
      "exponential(rate=" + std::to_string(rate) + ")",
      [rate](double x) { return x > 0 ? rate * std::exp(-rate * x) : 0.0; },
      [rate](double x) { return x > 0 ? std::exp(-rate * x) : 1.0; });
}

ContinuousPrior ContinuousPrior::uniform_on(double upper) {
  if (!(upper > 0)) throw NonPositivePoint("uniform upper bound must be > 0");
  return ContinuousPrior(
      "uniform(0," + std::to_string(upper) + "]",
      [upper](double x) { return (x > 0 && x <= upper) ? 1.0 / upper : 0.0; },
      [upper](double x) {
        if (x <= 0) return 1.0;
        if (x >= upper) return 0.0;
        return 1.0 - x / upper;
      },
      upper);
}

double density_at(const ContinuousPrior& prior, double x) {
  if (!(x > 0)) {
    throw NonPositivePoint("densities are defined on x > 0");
  }
  const double f = prior.density(x);
  if (f < 0 || !std::isfinite(f)) {
    throw NonPositivePoint("density evaluated to an invalid value at x = " +
                           std::to_string(x));
  }
  return f;
}

double integrate_density(const ContinuousPrior& prior, double x_lo,
                         double x_hi, int points) {
  if (x_hi <= 0) {
    x_hi = prior.support_hi() > 0 ? prior.support_hi() : 1e3;
  }
  if (x_lo <= 0) x_lo = x_hi * 1e-20;
  // Substituting x = e^t turns the integral into one of f(e^t) e^t on a
  // uniform t grid; trapezoid there handles densities spanning decades.
  const double t_lo = std::log(x_lo);
  const double t_hi = std::log(x_hi);
  const double h = (t_hi - t_lo) / (points - 1);
  double acc = 0.0;
  for (int i = 0; i < points; ++i) {
    const double x = std::exp(t_lo + i * h);
    const double g = prior.density(x) * x;
    acc += (i == 0 || i == points - 1) ? g / 2.0 : g;
  }
  return acc * h;
}

}  // namespace envelopes
