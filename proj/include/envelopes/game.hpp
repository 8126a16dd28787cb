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

#ifndef ENVELOPES_GAME_HPP_
#define ENVELOPES_GAME_HPP_

#include <map>
#include <vector>

#include "envelopes/core.hpp"
#include "envelopes/cover.hpp"

namespace envelopes {

// The arranger's mixed strategy: a finite-support distribution over
// envelope pairs. Weights are exact and must sum to exactly 1.
struct ArrangerAtom {
  EnvelopePair pair;
  Rational weight;
};

class ArrangerStrategy {
 public:
  explicit ArrangerStrategy(std::vector<ArrangerAtom> atoms);
  static ArrangerStrategy point_mass(const EnvelopePair& pair);

  const std::vector<ArrangerAtom>& atoms() const { return atoms_; }

 private:
  std::vector<ArrangerAtom> atoms_;
};

// The player's behavioral strategy q: observed amount -> probability of
// switching. Amounts not in the table use default_q.
class PlayerStrategy {
 public:
  PlayerStrategy(std::map<Amount, Rational> q, Rational default_q);
  static PlayerStrategy always_switch() { return PlayerStrategy({}, 1); }
  static PlayerStrategy never_switch() { return PlayerStrategy({}, 0); }

  const Rational& q_at(const Amount& observed) const;
  const std::map<Amount, Rational>& table() const { return q_; }
  const Rational& default_q() const { return default_q_; }

 private:
  std::map<Amount, Rational> q_;
  Rational default_q_;
};

// P(player ends holding the larger amount), enumerated exactly: each atom
// splits into its two deals with weight w/2; a deal showing the smaller
// amount wins with probability q(observed), a deal showing the larger wins
// with 1 - q(observed). Affine in every q value, and identically 1/2 for
// the constant strategies — switching blindly is a fresh coin toss.
Rational exact_win_value(const ArrangerStrategy& arranger,
                         const PlayerStrategy& player);

// The threshold player against a mixed arranger: the weighted average of
// the closed-form win probabilities. Strictly above 1/2 whenever the
// probe's survival strictly decreases.
double cover_vs_arranger(const ArrangerStrategy& arranger, const Probe& probe);

// Constructs a point-mass arranger (k, 2k) against which the probe's edge
// drops below epsilon: S(k) - S(2k) -> 0 as k grows, so no fixed epsilon
// advantage survives every arranger. Doubling search for a bracket, then
// bisection. Throws SearchFailed if the survival never decays enough.
ArrangerStrategy shift_adversary(const Probe& probe, double epsilon);

}  // namespace envelopes

#endif  // ENVELOPES_GAME_HPP_
