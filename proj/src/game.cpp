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

#include "envelopes/game.hpp"

#include <algorithm>
#include <cmath>

namespace envelopes {

ArrangerStrategy::ArrangerStrategy(std::vector<ArrangerAtom> atoms)
    : atoms_(std::move(atoms)) {
  if (atoms_.empty()) {
    throw MassExceedsOne("arranger strategy needs at least one pair");
  }
  std::sort(atoms_.begin(), atoms_.end(),
            [](const ArrangerAtom& a, const ArrangerAtom& b) {
              return a.pair.smaller() < b.pair.smaller();
            });
  Rational total = 0;
  for (size_t i = 0; i < atoms_.size(); ++i) {
    if (atoms_[i].weight <= 0) {
      throw MassExceedsOne("arranger weights must be positive");
    }
    if (i > 0 && atoms_[i].pair == atoms_[i - 1].pair) {
      throw MassExceedsOne("duplicate arranger pair at smaller = " +
                           atoms_[i].pair.smaller().str());
    }
    total += atoms_[i].weight;
  }
  if (total != 1) {
    throw MassExceedsOne("arranger weights must sum to 1, got " +
                         rational_str(total));
  }
}

ArrangerStrategy ArrangerStrategy::point_mass(const EnvelopePair& pair) {
  return ArrangerStrategy({ArrangerAtom{pair, Rational(1)}});
}

PlayerStrategy::PlayerStrategy(std::map<Amount, Rational> q,
                               Rational default_q)
    : q_(std::move(q)), default_q_(std::move(default_q)) {
  const auto valid = [](const Rational& p) { return p >= 0 && p <= 1; };
  if (!valid(default_q_)) {
    throw MassExceedsOne("switch probabilities must lie in [0, 1]");
  }
  for (const auto& [amount, p] : q_) {
    if (!valid(p)) {
      throw MassExceedsOne("switch probability at " + amount.str() +
                           " lies outside [0, 1]");
    }
  }
}

const Rational& PlayerStrategy::q_at(const Amount& observed) const {
  const auto it = q_.find(observed);
  return it != q_.end() ? it->second : default_q_;
}

Rational exact_win_value(const ArrangerStrategy& arranger,
                         const PlayerStrategy& player) {
  Rational value = 0;
  for (const ArrangerAtom& atom : arranger.atoms()) {
    const Rational half_weight = atom.weight / 2;
    // Deal 1: the player observes the smaller amount; switching wins.
    value += half_weight * player.q_at(atom.pair.smaller());
    // Deal 2: the player observes the larger amount; keeping wins.
    value += half_weight * (Rational(1) - player.q_at(atom.pair.larger()));
  }
  return value;
}

double cover_vs_arranger(const ArrangerStrategy& arranger,
                         const Probe& probe) {
  double value = 0.0;
  for (const ArrangerAtom& atom : arranger.atoms()) {
    value += rational_to_double(atom.weight) *
             exact_win_probability(atom.pair.smaller().to_double(),
                                   atom.pair.larger().to_double(), probe);
  }
  return value;
}

ArrangerStrategy shift_adversary(const Probe& probe, double epsilon) {
  if (!(epsilon > 0) || epsilon >= 0.5) {
    throw SearchFailed("epsilon must lie in (0, 1/2)");
  }
  const auto edge = [&](double k) {
    return probe.survival(k) - probe.survival(2.0 * k);
  };

  // Advantage below epsilon means edge below 2*epsilon; aim 5% under that
  // so the bisection boundary cannot round the advantage back up to
  // epsilon exactly.
  const double target = 1.9 * epsilon;
  double hi = 1.0;
  double lo = 0.0;
  constexpr double kLimit = 1e18;
  while (!(edge(hi) < target)) {
    lo = hi;
    hi *= 2.0;
    if (hi > kLimit) {
      throw SearchFailed("probe survival does not decay enough below " +
                         std::to_string(epsilon));
    }
  }
  // Tighten toward the boundary so the pair stays modest in size.
  if (lo > 0.0) {
    for (int i = 0; i < 60; ++i) {
      const double mid = (lo + hi) / 2.0;
      (edge(mid) < target ? hi : lo) = mid;
    }
  }
  return ArrangerStrategy::point_mass(make_pair(Amount::from_double(hi)));
}

}  // namespace envelopes
