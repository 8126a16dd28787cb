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

#include "envelopes/prior_io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace envelopes {

namespace {

using nlohmann::json;

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw UsageError("cannot open file: " + path);
  }
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw UsageError("malformed JSON in " + path + ": " + e.what());
  }
}

Rational rational_field(const json& obj, const char* key) {
  if (!obj.contains(key)) {
    throw UsageError(std::string("missing field '") + key + "'");
  }
  const json& v = obj.at(key);
  if (v.is_string()) return parse_rational(v.get<std::string>());
  if (v.is_number_integer()) return Rational(v.get<long long>());
  throw UsageError(std::string("field '") + key +
                   "' must be a rational string");
}

std::vector<PriorAtom> parse_atoms(const json& arr) {
  if (!arr.is_array() || arr.empty()) {
    throw UsageError("'atoms' must be a non-empty array");
  }
  std::vector<PriorAtom> atoms;
  atoms.reserve(arr.size());
  for (const json& entry : arr) {
    atoms.push_back(
        PriorAtom{Amount(rational_field(entry, "x")),
                  rational_field(entry, "w")});
  }
  return atoms;
}

}  // namespace

LoadedPrior load_prior(const std::string& path_or_name) {
  if (path_or_name == "broome") return DiscretePrior::broome();
  if (path_or_name == "exponential") return ContinuousPrior::exponential();
  if (path_or_name == "improper-uniform") {
    return DiscretePrior::improper_uniform_powers_of_two();
  }

  const json doc = load_json_file(path_or_name);
  if (!doc.is_object() || !doc.contains("type")) {
    throw UsageError("prior file needs a 'type' field: " + path_or_name);
  }
  const std::string type = doc.at("type").get<std::string>();
  if (type == "discrete") {
    return DiscretePrior::finite(parse_atoms(doc.at("atoms")));
  }
  if (type == "broome") return DiscretePrior::broome();
  if (type == "exponential") {
    const double rate = doc.value("rate", 1.0);
    return ContinuousPrior::exponential(rate);
  }
  if (type == "uniform") {
    if (!doc.contains("upper")) {
      throw UsageError("uniform prior needs an 'upper' field");
    }
    return ContinuousPrior::uniform_on(doc.at("upper").get<double>());
  }
  throw UsageError("unknown prior type '" + type + "'");
}

ArrangerStrategy load_arranger(const std::string& path) {
  const json doc = load_json_file(path);
  if (!doc.is_object() || !doc.contains("atoms")) {
    throw UsageError("arranger file needs an 'atoms' array: " + path);
  }
  std::vector<ArrangerAtom> atoms;
  for (const json& entry : doc.at("atoms")) {
    atoms.push_back(
        ArrangerAtom{make_pair(Amount(rational_field(entry, "x"))),
                     rational_field(entry, "w")});
  }
  return ArrangerStrategy(std::move(atoms));
}

PlayerStrategy load_player(const std::string& path) {
  const json doc = load_json_file(path);
  if (!doc.is_object()) {
    throw UsageError("player file must be a JSON object: " + path);
  }
  std::map<Amount, Rational> table;
  if (doc.contains("q")) {
    for (const json& entry : doc.at("q")) {
      table.emplace(Amount(rational_field(entry, "a")),
                    rational_field(entry, "p"));
    }
  }
  Rational default_q = 0;
  if (doc.contains("default")) {
    const json& d = doc.at("default");
    default_q = d.is_string() ? parse_rational(d.get<std::string>())
                              : Rational(d.get<long long>());
  }
  return PlayerStrategy(std::move(table), std::move(default_q));
}

std::vector<std::pair<double, double>> load_pairs_csv(
    const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw UsageError("cannot open file: " + path);
  }
  std::vector<std::pair<double, double>> pairs;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    if (first && line.rfind("a,", 0) == 0) {
      first = false;
      continue;  // header
    }
    first = false;
    std::istringstream row(line);
    std::string a_text, b_text;
    if (!std::getline(row, a_text, ',') || !std::getline(row, b_text)) {
      throw UsageError("pairs row needs two columns: '" + line + "'");
    }
    try {
      pairs.emplace_back(std::stod(a_text), std::stod(b_text));
    } catch (const std::exception&) {
      throw UsageError("pairs row is not numeric: '" + line + "'");
    }
  }
  if (pairs.empty()) {
    throw UsageError("pairs file has no rows: " + path);
  }
  return pairs;
}

}  // namespace envelopes
