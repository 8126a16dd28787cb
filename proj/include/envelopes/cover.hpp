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

#ifndef ENVELOPES_COVER_HPP_
#define ENVELOPES_COVER_HPP_

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <variant>
#include <vector>

#include "envelopes/core.hpp"
#include "envelopes/posterior.hpp"
#include "envelopes/rng.hpp"
#include "envelopes/stats.hpp"

namespace envelopes {

// The player's private random threshold Z. Compare Z against the observed
// number: switch if Z is larger, keep if smaller. Any distribution whose
// survival S(z) = P(Z > z) strictly decreases across an interval gives a
// strict edge on pairs straddling that interval; the standard exponential
// (S(z) = exp(-z)) works everywhere on the positive axis.
class Probe {
 public:
  using SurvivalFn = std::function<double(double)>;
  using SamplerFn = std::function<double(TrialRng&)>;

  // Requires S(0) = 1, S nonincreasing, and S eventually below 1 (a probe
  // that never decays can never fall between two numbers).
  Probe(std::string label, SurvivalFn survival, SamplerFn sampler);

  static Probe exponential();

  const std::string& label() const { return label_; }
  double survival(double z) const { return survival_(z); }
  double sample(TrialRng& rng) const { return sampler_(rng); }

 private:
  std::string label_;
  SurvivalFn survival_;
  SamplerFn sampler_;
};

// P(end with the larger number) = 1/2 + (S(min) - S(max)) / 2 for the
// threshold strategy on the pair {a, b}. Throws EqualNumbers /
// NonPositiveNumbers.
double exact_win_probability(double a, double b, const Probe& probe);

struct CoverPlay {
  Decision decision;  // kSwitch iff z exceeds the first envelope's content
  bool won;           // final envelope holds the larger number
  double z;
};

// One play with an explicit threshold; the deterministic core of the
// strategy.
CoverPlay play_cover_at(double a_content, double b_content, double z);

// One play drawing Z from the probe.
CoverPlay play_cover(const Assignment& assignment, const Probe& probe,
                     TrialRng& rng);

// Fair-bit source with consumption accounting: the coin the player tosses
// to build the binary expansion of U.
class BitStream {
 public:
  explicit BitStream(TrialRng rng) : source_(std::move(rng)) {}
  // Fixed bits for tests; throws std::out_of_range when exhausted.
  explicit BitStream(std::vector<bool> bits)
      : source_(FixedBits{std::move(bits), 0}) {}

  bool next();
  std::uint64_t bits_consumed() const { return consumed_; }

 private:
  struct FixedBits {
    std::vector<bool> bits;
    std::size_t pos;
  };
  std::variant<TrialRng, FixedBits> source_;
  std::uint64_t consumed_ = 0;
};

struct LazyVerdict {
  bool z_exceeds_a;
  std::uint32_t bits_used;
};

// Decides whether Z = -ln(U) > a, i.e. whether U < exp(-a), consuming coin
// tosses one at a time: after k bits U is pinned to an interval of width
// 2^-k, and the comparison resolves as soon as that interval clears
// exp(-a). The target is evaluated by interval arithmetic (MPFR, rounded
// down and up) at 64, then 128, then 256 bits; only a U astronomically
// close to exp(-a) could exhaust that, and then PrecisionExhausted is
// thrown rather than guessing. The verdict always equals the full-precision
// comparison on the same bits.
LazyVerdict lazy_compare(BitStream& bits, double a);

// Win-rate estimate for one pair under the probe, with the three-case
// decomposition: z below both numbers (wins ~1/2), z between them (wins
// always), z above both (wins ~1/2).
struct WinRateRun {
  SummaryStats win_rate;
  std::array<std::uint64_t, 3> strata_trials{};  // below, between, above
  std::array<std::uint64_t, 3> strata_wins{};
  double mean_bits = 0.0;  // coin tosses per trial; lazy estimator only
};

WinRateRun estimate_win_rate(double a, double b, const Probe& probe,
                             std::uint64_t n, std::uint64_t seed,
                             Execution exec = Execution::kOpenMp);

struct PairWinRate {
  double a = 0.0;
  double b = 0.0;
  double exact_p = 0.0;
  WinRateRun run;
};

// Batch form: pair i runs n_per_pair trials under seed + i, so pairs do not
// replay one another's randomness. Each empirical rate matches its own
// closed form within Monte Carlo error.
std::vector<PairWinRate> estimate_win_rate(
    const std::vector<std::pair<double, double>>& pairs, const Probe& probe,
    std::uint64_t n_per_pair, std::uint64_t seed,
    Execution exec = Execution::kOpenMp);

// Same experiment realized with coin tosses and lazy comparison instead of
// a materialized Z (standard exponential probe only); reports the mean
// number of tosses a trial needed.
WinRateRun estimate_win_rate_lazy(double a, double b, std::uint64_t n,
                                  std::uint64_t seed,
                                  Execution exec = Execution::kOpenMp);

}  // namespace envelopes

#endif  // ENVELOPES_COVER_HPP_
