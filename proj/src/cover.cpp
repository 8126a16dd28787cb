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

#include "envelopes/cover.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cmath>

namespace envelopes {

namespace {

void require_pair(double a, double b) {
  if (!(a > 0) || !(b > 0)) {
    throw NonPositiveNumbers("both numbers must be positive");
  }
  if (a == b) {
    throw EqualNumbers("the two numbers must differ");
  }
}

// Working precision ladder for exp(-a) and the cutoff on coin tosses. With
// 256-bit intervals the undecidable region around exp(-a) has measure
// ~2^-255, so hitting the ladder's end means the coin sequence is tracking
// exp(-a) bit for bit.
constexpr std::array<mpfr_prec_t, 3> kPrecisionLadder = {64, 128, 256};
constexpr std::uint32_t kMaxBits = 300;
constexpr mpfr_prec_t kUPrecision = 512;  // exact dyadic accumulation

struct MpfrValue {
  explicit MpfrValue(mpfr_prec_t prec) { mpfr_init2(v, prec); }
  ~MpfrValue() { mpfr_clear(v); }
  MpfrValue(const MpfrValue&) = delete;
  MpfrValue& operator=(const MpfrValue&) = delete;
  mpfr_t v;
};

}  // namespace

Probe::Probe(std::string label, SurvivalFn survival, SamplerFn sampler)
    : label_(std::move(label)),
      survival_(std::move(survival)),
      sampler_(std::move(sampler)) {
  const double at_zero = survival_(0.0);
  if (std::abs(at_zero - 1.0) > 1e-9) {
    throw NonPositiveNumbers("probe survival must satisfy S(0) = 1");
  }
  double prev = at_zero;
  bool decays = false;
  for (double z = 1e-9; z <= 1e15; z *= 10.0) {
    const double s = survival_(z);
    if (s < 0.0 || s > 1.0 + 1e-12) {
      throw NonPositiveNumbers("probe survival must map into [0, 1]");
    }
    if (s > prev + 1e-12) {
      throw NonPositiveNumbers("probe survival must be nonincreasing");
    }
    prev = s;
    if (s < 1.0 - 1e-9) decays = true;
  }
  if (!decays) {
    throw NonPositiveNumbers(
        "probe survival never decays; Z could not fall between any pair");
  }
}

Probe Probe::exponential() {
  return Probe(
      "exponential",
      [](double z) { return z <= 0 ? 1.0 : std::exp(-z); },
      [](TrialRng& rng) {
        // U in (0, 1]: flip the half-open unit draw to keep log finite.
        const double u = 1.0 - rng.next_unit();
        return -std::log(u);
      });
}

double exact_win_probability(double a, double b, const Probe& probe) {
  require_pair(a, b);
  const double lo = std::min(a, b);
  const double hi = std::max(a, b);
  return 0.5 + (probe.survival(lo) - probe.survival(hi)) / 2.0;
}

CoverPlay play_cover_at(double a_content, double b_content, double z) {
  require_pair(a_content, b_content);
  const bool switched = z > a_content;
  const double final_content = switched ? b_content : a_content;
  return CoverPlay{switched ? Decision::kSwitch : Decision::kKeep,
                   final_content == std::max(a_content, b_content), z};
}

CoverPlay play_cover(const Assignment& assignment, const Probe& probe,
                     TrialRng& rng) {
  return play_cover_at(assignment.a().to_double(),
                       assignment.b().to_double(), probe.sample(rng));
}

bool BitStream::next() {
  ++consumed_;
  if (auto* rng = std::get_if<TrialRng>(&source_)) {
    return rng->next_bit();
  }
  auto& fixed = std::get<FixedBits>(source_);
  if (fixed.pos >= fixed.bits.size()) {
    throw std::out_of_range("fixed bit stream exhausted");
  }
  return fixed.bits[fixed.pos++];
}

LazyVerdict lazy_compare(BitStream& bits, double a) {
  if (!(a > 0)) {
    throw NonPositiveNumbers("lazy comparison needs a positive threshold");
  }

  // u_lo accumulates the consumed bits exactly; U lies in
  // [u_lo, u_lo + width) with width = 2^-bits_used.
  MpfrValue u_lo(kUPrecision), u_hi(kUPrecision), width(kUPrecision);
  mpfr_set_zero(u_lo.v, 1);
  mpfr_set_d(width.v, 1.0, MPFR_RNDN);

  MpfrValue target_lo(kPrecisionLadder.back()), target_hi(kPrecisionLadder.back());
  std::size_t ladder_pos = 0;
  const auto evaluate_target = [&](mpfr_prec_t prec) {
    MpfrValue tmp(prec);
    mpfr_set_d(tmp.v, -a, MPFR_RNDN);  // exact: a is a double
    mpfr_exp(tmp.v, tmp.v, MPFR_RNDD);
    mpfr_set(target_lo.v, tmp.v, MPFR_RNDD);
    mpfr_set_d(tmp.v, -a, MPFR_RNDN);
    mpfr_exp(tmp.v, tmp.v, MPFR_RNDU);
    mpfr_set(target_hi.v, tmp.v, MPFR_RNDU);
  };
  evaluate_target(kPrecisionLadder[ladder_pos]);

  std::uint32_t used = 0;
  while (true) {
    mpfr_add(u_hi.v, u_lo.v, width.v, MPFR_RNDU);
    // U < u_hi <= exp(-a)  =>  U < exp(-a)  =>  Z > a.
    if (mpfr_cmp(u_hi.v, target_lo.v) <= 0) {
      return LazyVerdict{true, used};
    }
    // U >= u_lo >= exp(-a)  =>  Z <= a (ties have measure zero).
    if (mpfr_cmp(u_lo.v, target_hi.v) >= 0) {
      return LazyVerdict{false, used};
    }

    // Undecided. If U's interval is still wider than the target's, another
    // coin toss helps; otherwise the target needs more precision.
    MpfrValue gap(kPrecisionLadder.back());
    mpfr_sub(gap.v, target_hi.v, target_lo.v, MPFR_RNDU);
    if (mpfr_cmp(width.v, gap.v) <= 0) {
      if (++ladder_pos >= kPrecisionLadder.size()) {
        throw PrecisionExhausted(
            "exp(-a) interval at 256 bits still straddles the coin sequence");
      }
      evaluate_target(kPrecisionLadder[ladder_pos]);
      continue;
    }

    if (used >= kMaxBits) {
      throw PrecisionExhausted("comparison undecided after " +
                               std::to_string(kMaxBits) + " coin tosses");
    }
    mpfr_div_2ui(width.v, width.v, 1, MPFR_RNDN);  // exact
    if (bits.next()) {
      mpfr_add(u_lo.v, u_lo.v, width.v, MPFR_RNDN);  // exact at 512 bits
    }
    ++used;
  }
}

namespace {

struct WinCounters {
  std::uint64_t wins = 0;
  std::array<std::uint64_t, 3> strata_trials{};
  std::array<std::uint64_t, 3> strata_wins{};
  std::uint64_t bits = 0;

  void merge(const WinCounters& other) {
    wins += other.wins;
    bits += other.bits;
    for (int s = 0; s < 3; ++s) {
      strata_trials[s] += other.strata_trials[s];
      strata_wins[s] += other.strata_wins[s];
    }
  }
};

// One trial given the verdicts "z exceeds the smaller number" and
// "z exceeds the larger number".
void tally(WinCounters& c, bool a_is_smaller, bool above_min, bool above_max) {
  // A holds min: switch iff z > min, and switching wins.
  // A holds max: switch iff z > max, and keeping wins.
  const bool won = a_is_smaller ? above_min : !above_max;
  const int stratum = above_max ? 2 : (above_min ? 1 : 0);
  c.wins += won ? 1 : 0;
  ++c.strata_trials[stratum];
  c.strata_wins[stratum] += won ? 1 : 0;
}

template <class TrialFn>
WinRateRun run_win_trials(double a, double b, std::uint64_t n,
                          std::uint64_t seed, Execution exec, TrialFn&& fn,
                          const std::string& schema) {
  require_pair(a, b);
  if (n == 0) throw ZeroTrials("trial count must be >= 1");

  WinCounters total;
  if (exec == Execution::kSerial) {
    for (std::uint64_t t = 0; t < n; ++t) fn(t, total);
  } else {
#pragma omp parallel
    {
      WinCounters local;
#pragma omp for schedule(static) nowait
      for (long long t = 0; t < static_cast<long long>(n); ++t) {
        fn(static_cast<std::uint64_t>(t), local);
      }
#pragma omp critical(envelopes_win_trials)
      total.merge(local);
    }
  }

  WinRateRun run;
  {
    // Bernoulli outcomes: the exact moments reduce to the win count.
    const std::uint64_t wins = total.wins;
    const Rational p = Rational(BigInt(wins), BigInt(n));
    run.win_rate.n = n;
    run.win_rate.seed = seed;
    run.win_rate.schema = schema;
    run.win_rate.mean = rational_to_double(p);
    if (n > 1) {
      const Rational var = BigInt(wins) * (Rational(1) - p) / BigInt(n - 1);
      run.win_rate.sample_variance = rational_to_double(var);
      run.win_rate.ci95_halfwidth =
          1.96 * std::sqrt(run.win_rate.sample_variance /
                           static_cast<double>(n));
    }
  }
  run.strata_trials = total.strata_trials;
  run.strata_wins = total.strata_wins;
  run.mean_bits = static_cast<double>(total.bits) / static_cast<double>(n);
  return run;
}

}  // namespace

WinRateRun estimate_win_rate(double a, double b, const Probe& probe,
                             std::uint64_t n, std::uint64_t seed,
                             Execution exec) {
  const double lo = std::min(a, b);
  const double hi = std::max(a, b);
  return run_win_trials(
      a, b, n, seed, exec,
      [&](std::uint64_t t, WinCounters& c) {
        TrialRng rng(seed, t);
        const bool a_is_smaller = rng.next_bit();
        const double z = probe.sample(rng);
        tally(c, a_is_smaller, z > lo, z > hi);
      },
      "cover(" + probe.label() + ")");
}

std::vector<PairWinRate> estimate_win_rate(
    const std::vector<std::pair<double, double>>& pairs, const Probe& probe,
    std::uint64_t n_per_pair, std::uint64_t seed, Execution exec) {
  std::vector<PairWinRate> results;
  results.reserve(pairs.size());
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto [a, b] = pairs[i];
    PairWinRate entry;
    entry.a = a;
    entry.b = b;
    entry.exact_p = exact_win_probability(a, b, probe);
    entry.run = estimate_win_rate(a, b, probe, n_per_pair, seed + i, exec);
    results.push_back(std::move(entry));
  }
  return results;
}

WinRateRun estimate_win_rate_lazy(double a, double b, std::uint64_t n,
                                  std::uint64_t seed, Execution exec) {
  const double lo = std::min(a, b);
  const double hi = std::max(a, b);
  return run_win_trials(
      a, b, n, seed, exec,
      [&](std::uint64_t t, WinCounters& c) {
        TrialRng rng(seed, t);
        const bool a_is_smaller = rng.next_bit();
        // The player compares Z against the amount actually observed; the
        // second comparison replays the same coin sequence against the
        // other endpoint to classify the stratum.
        const BitStream fresh{rng};
        BitStream stream_mine = fresh;
        BitStream stream_other = fresh;
        const double mine = a_is_smaller ? lo : hi;
        const double other = a_is_smaller ? hi : lo;
        const LazyVerdict v_mine = lazy_compare(stream_mine, mine);
        const LazyVerdict v_other = lazy_compare(stream_other, other);
        const bool above_min = a_is_smaller ? v_mine.z_exceeds_a
                                            : v_other.z_exceeds_a;
        const bool above_max = a_is_smaller ? v_other.z_exceeds_a
                                            : v_mine.z_exceeds_a;
        tally(c, a_is_smaller, above_min, above_max);
        c.bits += v_mine.bits_used;
      },
      "cover-lazy(exponential)");
}

}  // namespace envelopes
