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

#ifndef ENVELOPES_SIMULATE_HPP_
#define ENVELOPES_SIMULATE_HPP_

#include <cstdint>
#include <vector>

#include "envelopes/core.hpp"
#include "envelopes/priors.hpp"
#include "envelopes/stats.hpp"

namespace envelopes {

// The envelope-filling procedures the engine can repeat:
//   fixed-pair:       the pair {x, 2x} is fixed, only the deal is random;
//   conditional-fill: the first envelope holds x, the other gets x/2 or 2x
//                     by a fair coin;
//   prior-draw:       X comes from a prior, and trials are conditioned on
//                     the observation A = a by rejection;
//   ali-baba:         Ali's envelope is filled with x first, Baba's gets
//                     x/2 or 2x by a fair coin.
// The first answers "is there a reason to swap an already-dealt pair" (no:
// the swap gain averages 0); the second and fourth realize the experiment
// in which swapping really does gain (5/4)x on average.
enum class SchemaKind { kFixedPair, kConditionalFill, kPriorDraw, kAliBaba };

// Trial log row for CSV output. Captured for the first kMaxTrialRows trials
// only; contents are exact.
struct TrialRow {
  std::uint64_t trial;
  Amount a;
  Amount b;
  Rational gain;  // b - a
};

inline constexpr std::uint64_t kMaxTrialRows = 100000;

struct FixedPairRun {
  SummaryStats swap_gain;   // b - a per trial; true mean 0
  SummaryStats envelope_a;  // content of the first envelope; true mean 3x/2
};

// Deals the fixed pair {x, 2x} n times. Throws NonPositiveAmount / ZeroTrials.
FixedPairRun run_fixed_pair(const Amount& x, std::uint64_t n,
                            std::uint64_t seed,
                            Execution exec = Execution::kOpenMp,
                            std::vector<TrialRow>* rows = nullptr);

// First envelope holds x, the other x/2 or 2x by fair coin; reports the
// other envelope's content. True mean (5/4) x.
SummaryStats run_conditional_fill(const Amount& x, std::uint64_t n,
                                  std::uint64_t seed,
                                  Execution exec = Execution::kOpenMp,
                                  std::vector<TrialRow>* rows = nullptr);

struct PriorConditionedRun {
  SummaryStats b_given_a;  // content of envelope B on kept trials
  std::uint64_t attempts = 0;
  double acceptance_rate = 0.0;  // kept / attempts; converges to P(A = a)
};

// Draws X from the prior, deals, and keeps only trials with A = a, until
// n_target trials are kept. The kept-trial mean estimates E[B | A = a].
// Throws UnattainableObservation if a has zero prior probability and
// BudgetExceeded if the acceptance rate falls below 1e-6 after 1e7 attempts.
PriorConditionedRun run_prior_conditioned(const DiscretePrior& prior,
                                          const Amount& a,
                                          std::uint64_t n_target,
                                          std::uint64_t seed,
                                          Execution exec = Execution::kOpenMp,
                                          std::vector<TrialRow>* rows = nullptr);

struct AliBabaRun {
  SummaryStats baba_content;   // true mean 5x/4
  SummaryStats ali_over_baba;  // Ali's content over Baba's; true mean 5/4 too
  SummaryStats total_content;  // Ali + Baba; true mean 9x/4, not (5/4)(x + E[Baba])
};

// The asymmetric variant: Ali's envelope is filled with x first, then
// Baba's with x/2 or 2x by fair coin. Both protagonists rationally expect
// a 5/4 advantage from swapping; the total shows the estimates do not add.
AliBabaRun run_alibaba(const Amount& x, std::uint64_t n, std::uint64_t seed,
                       Execution exec = Execution::kOpenMp,
                       std::vector<TrialRow>* rows = nullptr);

struct PartialMeanRow {
  long n_terms;          // number of leading Broome atoms included
  Rational partial_mean; // sum over those atoms of p(n) * (3/2) * 2^n
};

// Partial means of the envelope content under the Broome prior. Each row
// adds (3/2)(1/3)(4/3)^n, so the sequence grows without bound: the prior is
// proper but has infinite mean, and "gain on average by switching" loses
// its footing. Exact rationals row by row.
std::vector<PartialMeanRow> diverging_mean_diagnostic(long n_rows);

}  // namespace envelopes

#endif  // ENVELOPES_SIMULATE_HPP_
