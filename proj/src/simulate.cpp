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

#include "envelopes/simulate.hpp"

#include <algorithm>
#include <array>
#include <utility>

namespace envelopes {

namespace {

void require_trials(std::uint64_t n) {
  if (n == 0) throw ZeroTrials("trial count must be >= 1");
}

// Runs fn over trials [0, n) with a per-trial counter-based rng and merges
// K exact accumulators. The OpenMP and serial paths produce bit-identical
// results: stream t is a pure function of (seed, t) and rational merges are
// order-insensitive.
template <std::size_t K, class TrialFn>
std::array<ExactMoments, K> reduce_trials(std::uint64_t n, std::uint64_t seed,
                                          Execution exec, TrialFn&& fn) {
  std::array<ExactMoments, K> total;
  if (exec == Execution::kSerial) {
    for (std::uint64_t t = 0; t < n; ++t) {
      TrialRng rng(seed, t);
      const std::array<Rational, K> values = fn(t, rng);
      for (std::size_t k = 0; k < K; ++k) total[k].add(values[k]);
    }
    return total;
  }

#pragma omp parallel
  {
    std::array<ExactMoments, K> local;
#pragma omp for schedule(static) nowait
    for (long long t = 0; t < static_cast<long long>(n); ++t) {
      TrialRng rng(seed, static_cast<std::uint64_t>(t));
      const std::array<Rational, K> values =
          fn(static_cast<std::uint64_t>(t), rng);
      for (std::size_t k = 0; k < K; ++k) local[k].add(values[k]);
    }
#pragma omp critical(envelopes_reduce_trials)
    {
      for (std::size_t k = 0; k < K; ++k) total[k].merge(local[k]);
    }
  }
  return total;
}

void maybe_record(std::vector<TrialRow>* rows, std::uint64_t t,
                  const Amount& a, const Amount& b) {
  if (rows != nullptr && t < rows->size()) {
    (*rows)[t] = TrialRow{t, a, b, b.value() - a.value()};
  }
}

void prepare_rows(std::vector<TrialRow>* rows, std::uint64_t n) {
  if (rows != nullptr) {
    rows->assign(static_cast<std::size_t>(std::min(n, kMaxTrialRows)),
                 TrialRow{});
  }
}

std::string describe(const char* name, const Amount& x) {
  return std::string(name) + "(x=" + x.str() + ")";
}

}  // namespace

FixedPairRun run_fixed_pair(const Amount& x, std::uint64_t n,
                            std::uint64_t seed, Execution exec,
                            std::vector<TrialRow>* rows) {
  require_trials(n);
  const EnvelopePair pair = make_pair(x);
  prepare_rows(rows, n);

  auto moments = reduce_trials<2>(
      n, seed, exec, [&](std::uint64_t t, TrialRng& rng) {
        const Assignment deal_result = deal(pair, rng.next_bit());
        maybe_record(rows, t, deal_result.a(), deal_result.b());
        return std::array<Rational, 2>{
            deal_result.b().value() - deal_result.a().value(),
            deal_result.a().value()};
      });

  FixedPairRun run;
  run.swap_gain = moments[0].summarize(seed, describe("fixed-pair", x));
  run.envelope_a =
      moments[1].summarize(seed, describe("fixed-pair/envelope-a", x));
  return run;
}

SummaryStats run_conditional_fill(const Amount& x, std::uint64_t n,
                                  std::uint64_t seed, Execution exec,
                                  std::vector<TrialRow>* rows) {
  require_trials(n);
  if (!x.positive()) {
    throw NonPositiveAmount("fill amount must be positive, got " + x.str());
  }
  const Amount doubled = x.doubled();
  const Amount halved = x.halved();
  prepare_rows(rows, n);

  auto moments = reduce_trials<1>(
      n, seed, exec, [&](std::uint64_t t, TrialRng& rng) {
        const Amount& other = rng.next_bit() ? doubled : halved;
        maybe_record(rows, t, x, other);
        return std::array<Rational, 1>{other.value()};
      });

  return moments[0].summarize(seed, describe("conditional-fill", x));
}

PriorConditionedRun run_prior_conditioned(const DiscretePrior& prior,
                                          const Amount& a,
                                          std::uint64_t n_target,
                                          std::uint64_t seed, Execution exec,
                                          std::vector<TrialRow>* rows) {
  require_trials(n_target);
  if (!prior.proper()) {
    throw ImproperPrior("prior-conditioned runs need a proper prior");
  }
  if (prior.weight_at(a) == 0 && prior.weight_at(a.halved()) == 0) {
    throw UnattainableObservation("observation " + a.str() +
                                  " has zero prior probability");
  }
  if (rows != nullptr) {
    rows->clear();
    rows->reserve(static_cast<std::size_t>(std::min(n_target, kMaxTrialRows)));
  }

  constexpr std::uint64_t kBlock = 1 << 16;
  constexpr std::uint64_t kBudgetAttempts = 10000000;  // 1e7

  ExactMoments kept_moments;
  std::uint64_t kept = 0;
  std::uint64_t attempts = 0;  // attempts actually consumed, in index order

  // A kept trial can only look two ways: the drawn X equals a (so A shows
  // the smaller amount and B holds 2a) or X equals a/2 (A shows the larger,
  // B holds a/2). Everything else is rejected.
  const Amount a_half = a.halved();
  const Amount b_up = a.doubled();
  enum : char { kRejected = 0, kAcceptedUp = 1, kAcceptedDown = 2 };
  std::vector<char> outcome(kBlock);

  for (std::uint64_t block_lo = 0; kept < n_target; block_lo += kBlock) {
    const auto simulate_attempt = [&](std::uint64_t i) {
      TrialRng rng(seed, block_lo + i);
      const Amount smaller = sample_smaller(prior, rng);
      const bool a_holds_smaller = rng.next_bit();
      if (a_holds_smaller) {
        outcome[i] = smaller == a ? kAcceptedUp : kRejected;
      } else {
        outcome[i] = smaller == a_half ? kAcceptedDown : kRejected;
      }
    };

    if (exec == Execution::kSerial) {
      for (std::uint64_t i = 0; i < kBlock; ++i) simulate_attempt(i);
    } else {
#pragma omp parallel for schedule(static)
      for (long long i = 0; i < static_cast<long long>(kBlock); ++i) {
        simulate_attempt(static_cast<std::uint64_t>(i));
      }
    }

    // Consume the block in attempt order so the kept set (and therefore
    // every statistic) matches a purely sequential rejection loop.
    for (std::uint64_t i = 0; i < kBlock && kept < n_target; ++i) {
      ++attempts;
      if (outcome[i] == kRejected) continue;
      const Amount& b = outcome[i] == kAcceptedUp ? b_up : a_half;
      kept_moments.add(b.value());
      if (rows != nullptr && rows->size() < kMaxTrialRows) {
        rows->push_back(
            TrialRow{block_lo + i, a, b, b.value() - a.value()});
      }
      ++kept;
    }

    if (kept < n_target && attempts >= kBudgetAttempts &&
        Rational(BigInt(kept), BigInt(attempts)) < Rational(1, 1000000)) {
      throw BudgetExceeded("acceptance rate below 1e-6 after " +
                           std::to_string(attempts) + " attempts");
    }
  }

  PriorConditionedRun run;
  run.b_given_a = kept_moments.summarize(
      seed, "prior-draw(" + prior.label() + ",a=" + a.str() + ")");
  run.attempts = attempts;
  run.acceptance_rate =
      static_cast<double>(kept) / static_cast<double>(attempts);
  return run;
}

AliBabaRun run_alibaba(const Amount& x, std::uint64_t n, std::uint64_t seed,
                       Execution exec, std::vector<TrialRow>* rows) {
  require_trials(n);
  if (!x.positive()) {
    throw NonPositiveAmount("Ali's amount must be positive, got " + x.str());
  }
  const Amount doubled = x.doubled();
  const Amount halved = x.halved();
  prepare_rows(rows, n);

  auto moments = reduce_trials<3>(
      n, seed, exec, [&](std::uint64_t t, TrialRng& rng) {
        const Amount& baba = rng.next_bit() ? doubled : halved;
        maybe_record(rows, t, x, baba);
        return std::array<Rational, 3>{baba.value(),
                                       x.value() / baba.value(),
                                       x.value() + baba.value()};
      });

  AliBabaRun run;
  run.baba_content = moments[0].summarize(seed, describe("ali-baba/baba", x));
  run.ali_over_baba =
      moments[1].summarize(seed, describe("ali-baba/ali-over-baba", x));
  run.total_content =
      moments[2].summarize(seed, describe("ali-baba/total", x));
  return run;
}

std::vector<PartialMeanRow> diverging_mean_diagnostic(long n_rows) {
  if (n_rows < 1) throw NegativeIndex("diagnostic needs at least one row");
  std::vector<PartialMeanRow> table;
  table.reserve(static_cast<std::size_t>(n_rows));
  Rational partial = 0;
  for (long n = 0; n < n_rows; ++n) {
    // p(n) * (3/2) * 2^n = (3/2)(1/3)(4/3)^n
    partial += broome_pmf(n) * Rational(3, 2) * Rational(BigInt(1) << n);
    table.push_back(PartialMeanRow{n + 1, partial});
  }
  return table;
}

}  // namespace envelopes
