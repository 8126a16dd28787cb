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

#ifndef ENVELOPES_PRIOR_IO_HPP_
#define ENVELOPES_PRIOR_IO_HPP_

#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "envelopes/game.hpp"
#include "envelopes/priors.hpp"

namespace envelopes {

using LoadedPrior = std::variant<DiscretePrior, ContinuousPrior>;

// Accepts a built-in name ("broome", "exponential", or the diagnostic
// "improper-uniform") or a path to a JSON file shaped like one of
//   {"type": "discrete", "atoms": [{"x": "1", "w": "1/3"}, ...]}
//   {"type": "broome"}
//   {"type": "exponential", "rate": 1.0}
//   {"type": "uniform", "upper": 10.0}
// Rationals are "num/den" strings. Throws UsageError on malformed input.
LoadedPrior load_prior(const std::string& path_or_name);

// {"atoms": [{"x": "1", "w": "1/2"}, ...]} — x is the smaller amount of the
// pair (x, 2x); weights must sum to exactly 1.
ArrangerStrategy load_arranger(const std::string& path);

// {"q": [{"a": "1", "p": "1"}, ...], "default": "0"}.
PlayerStrategy load_player(const std::string& path);

// CSV with header "a,b" and one positive decimal pair per row.
std::vector<std::pair<double, double>> load_pairs_csv(const std::string& path);

}  // namespace envelopes

#endif  // ENVELOPES_PRIOR_IO_HPP_
