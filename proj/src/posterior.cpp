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

namespace envelopes {

namespace {

constexpr double kRelTol = 1e-12;  // strictness tolerance, continuous path

// -1, 0, +1 for lhs < rhs, lhs ~ rhs, lhs > rhs under relative tolerance.
int compare_with_tolerance(double lhs, double rhs) {
  const double scale = std::max(std::abs(lhs), std::abs(rhs));
  if (std::abs(lhs - rhs) <= kRelTol * scale) return 0;
  return lhs < rhs ? -1 : 1;
}

struct DensityWeights {
  double up;    // 2 f(a)
  double down;  // f(a/2)
};

DensityWeights continuous_weights(const ContinuousPrior& prior, double a) {
  if (!(a > 0)) throw NonPositivePoint("observations must be positive");
  const double up = 2.0 * density_at(prior, a);
  const double down = density_at(prior, a / 2.0);
  if (up == 0.0 && down == 0.0) {
    throw UnattainableObservation("both densities vanish at a = " +
                                  std::to_string(a));
  }
  return {up, down};
}

struct MassWeights {
  Rational up;    // p(a)
  Rational down;  // p(a/2)
};

MassWeights discrete_weights(const DiscretePrior& prior, const Amount& a) {
  if (!a.positive()) {
    throw NonPositiveAmount("observations must be positive, got " + a.str());
  }
  MassWeights w{prior.weight_at(a), prior.weight_at(a.halved())};
  if (w.up == 0 && w.down == 0) {
    throw UnattainableObservation("observation " + a.str() +
                                  " has zero prior probability");
  }
  return w;
}

}  // namespace

const char* to_string(Decision d) {
  switch (d) {
    case Decision::kSwitch:
      return "switch";
    case Decision::kKeep:
      return "keep";
    case Decision::kIndifferent:
      return "indifferent";
  }
  return "?";
}

PosteriorSplit::PosteriorSplit(Rational up, Rational down)
    : exact_(true), up_r_(std::move(up)), down_r_(std::move(down)) {
  up_f_ = rational_to_double(up_r_);
  down_f_ = rational_to_double(down_r_);
}

PosteriorSplit::PosteriorSplit(double up, double down)
    : exact_(false), up_f_(up), down_f_(down) {}

const Rational& PosteriorSplit::up_exact() const {
  if (!exact_) throw std::logic_error("continuous split has no exact form");
  return up_r_;
}

const Rational& PosteriorSplit::down_exact() const {
  if (!exact_) throw std::logic_error("continuous split has no exact form");
  return down_r_;
}

PosteriorSplit split_discrete(const DiscretePrior& prior, const Amount& a) {
  const MassWeights w = discrete_weights(prior, a);
  const Rational total = w.up + w.down;
  return PosteriorSplit(w.up / total, w.down / total);
}

PosteriorSplit split_continuous(const ContinuousPrior& prior, double a) {
  const DensityWeights w = continuous_weights(prior, a);
  const double total = w.up + w.down;
  return PosteriorSplit(w.up / total, w.down / total);
}

Amount conditional_expectation(const DiscretePrior& prior, const Amount& a) {
  const PosteriorSplit split = split_discrete(prior, a);
  const Rational expectation = split.up_exact() * a.value() * 2 +
                               split.down_exact() * a.value() / 2;
  return Amount(expectation);
}

double conditional_expectation(const ContinuousPrior& prior, double a) {
  const PosteriorSplit split = split_continuous(prior, a);
  return split.up() * 2.0 * a + split.down() * a / 2.0;
}

Decision decide_expectation(const DiscretePrior& prior, const Amount& a) {
  const MassWeights w = discrete_weights(prior, a);
  if (w.down < 2 * w.up) return Decision::kSwitch;
  if (w.down > 2 * w.up) return Decision::kKeep;
  return Decision::kIndifferent;
}

Decision decide_expectation(const ContinuousPrior& prior, double a) {
  const DensityWeights w = continuous_weights(prior, a);
  // w.up is already 2 f(a); the criterion f(a/2) < 4 f(a) reads down < 2 up.
  switch (compare_with_tolerance(w.down, 2.0 * w.up)) {
    case -1:
      return Decision::kSwitch;
    case 1:
      return Decision::kKeep;
    default:
      return Decision::kIndifferent;
  }
}

Decision decide_probability_of_larger(const DiscretePrior& prior,
                                      const Amount& a) {
  const MassWeights w = discrete_weights(prior, a);
  if (w.down < w.up) return Decision::kSwitch;
  if (w.down > w.up) return Decision::kKeep;
  return Decision::kIndifferent;
}

Decision decide_probability_of_larger(const ContinuousPrior& prior,
                                      double a) {
  const DensityWeights w = continuous_weights(prior, a);
  // f(a/2) < 2 f(a), i.e. down < up with up = 2 f(a).
  switch (compare_with_tolerance(w.down, w.up)) {
    case -1:
      return Decision::kSwitch;
    case 1:
      return Decision::kKeep;
    default:
      return Decision::kIndifferent;
  }
}

}  // namespace envelopes
