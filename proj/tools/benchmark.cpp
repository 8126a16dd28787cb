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

// Times each Monte Carlo kernel serially and under OpenMP at the same
// (seed, n) and confirms the two paths agree bit for bit. The exact
// accumulators make the parallel reduction order invisible, so any mismatch
// here is a bug, not noise.

#include <omp.h>

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <string>

#include "envelopes/cover.hpp"
#include "envelopes/simulate.hpp"

namespace {

using envelopes::Amount;
using envelopes::Execution;
using envelopes::SummaryStats;

double time_ms(const std::function<void()>& fn) {
  const auto t0 = std::chrono::steady_clock::now();
  fn();
  const auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

bool identical(const SummaryStats& a, const SummaryStats& b) {
  return a.n == b.n && a.mean == b.mean &&
         a.sample_variance == b.sample_variance &&
         a.ci95_halfwidth == b.ci95_halfwidth;
}

struct Case {
  std::string name;
  std::function<SummaryStats(Execution)> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::uint64_t n = argc > 1 ? std::strtoull(argv[1], nullptr, 10)
                                   : 1000000;
  const std::uint64_t seed = 42;

  const Case cases[] = {
      {"fixed-pair swap gain",
       [&](Execution e) {
         return envelopes::run_fixed_pair(Amount(20), n, seed, e).swap_gain;
       }},
      {"conditional-fill content",
       [&](Execution e) {
         return envelopes::run_conditional_fill(Amount(20), n, seed, e);
       }},
      {"ali-baba baba content",
       [&](Execution e) {
         return envelopes::run_alibaba(Amount(100), n, seed, e).baba_content;
       }},
      {"prior-draw broome a=4",
       [&](Execution e) {
         return envelopes::run_prior_conditioned(
                    envelopes::DiscretePrior::broome(), Amount(4),
                    n / 10, seed, e)
             .b_given_a;
       }},
      {"cover win rate (1,2)",
       [&](Execution e) {
         return envelopes::estimate_win_rate(
                    1.0, 2.0, envelopes::Probe::exponential(), n, seed, e)
             .win_rate;
       }},
  };

  std::printf("threads available: %d, n = %llu\n\n", omp_get_max_threads(),
              static_cast<unsigned long long>(n));
  std::printf("%-28s %12s %12s %9s %s\n", "kernel", "serial(ms)", "openmp(ms)",
              "speedup", "bit-identical");

  bool all_identical = true;
  for (const Case& c : cases) {
    SummaryStats serial_stats, parallel_stats;
    const double serial_ms =
        time_ms([&] { serial_stats = c.run(Execution::kSerial); });
    const double parallel_ms =
        time_ms([&] { parallel_stats = c.run(Execution::kOpenMp); });
    const bool same = identical(serial_stats, parallel_stats);
    all_identical = all_identical && same;
    std::printf("%-28s %12.1f %12.1f %8.2fx %s\n", c.name.c_str(), serial_ms,
                parallel_ms, serial_ms / parallel_ms, same ? "yes" : "NO");
  }

  if (!all_identical) {
    std::printf("\nserial and OpenMP paths disagree\n");
    return 1;
  }
  return 0;
}
