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

#include "envelopes/amount.hpp"

#include <cctype>
#include <cmath>

namespace envelopes {

std::string rational_str(const Rational& r) {
  std::string s = numerator(r).str();
  if (denominator(r) != 1) {
    s += '/';
    s += denominator(r).str();
  }
  return s;
}

namespace {

bool valid_integer_token(std::string_view s) {
  if (!s.empty() && (s.front() == '+' || s.front() == '-')) s.remove_prefix(1);
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

// cpp_int rejects a leading '+'.
BigInt parse_bigint(std::string_view s) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  return BigInt(std::string(s));
}

}  // namespace

Rational parse_rational(std::string_view s) {
  const std::string_view original = s;
  auto fail = [&]() -> Rational {
    throw UsageError("not a rational number: '" + std::string(original) + "'");
  };

  if (s.empty()) fail();

  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    std::string_view num = s.substr(0, slash);
    std::string_view den = s.substr(slash + 1);
    if (!valid_integer_token(num) || !valid_integer_token(den)) fail();
    BigInt n = parse_bigint(num);
    BigInt d = parse_bigint(den);
    if (d == 0) fail();
    return Rational(n, d);
  }

  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    std::string_view whole = s.substr(0, dot);
    std::string_view frac = s.substr(dot + 1);
    if (whole.empty() || frac.empty()) fail();
    if (!valid_integer_token(whole) || !valid_integer_token(frac) ||
        frac.front() == '+' || frac.front() == '-') {
      fail();
    }
    const bool negative = whole.front() == '-';
    BigInt scale = 1;
    for (size_t i = 0; i < frac.size(); ++i) scale *= 10;
    BigInt n = parse_bigint(whole) * scale;
    BigInt f = parse_bigint(frac);
    n += negative ? -f : f;
    return Rational(n, scale);
  }

  if (!valid_integer_token(s)) fail();
  return Rational(parse_bigint(s));
}

double rational_to_double(const Rational& r) {
  return r.convert_to<double>();
}

Amount::Amount(int units) {
  if (units < 0) {
    throw NonPositiveAmount("amount must be nonnegative, got " +
                            std::to_string(units));
  }
  value_ = units;
}

Amount::Amount(Rational value) : value_(std::move(value)) {
  if (value_ < 0) {
    throw NonPositiveAmount("amount must be nonnegative, got " +
                            rational_str(value_));
  }
}

Amount Amount::parse(std::string_view s) { return Amount(parse_rational(s)); }

Amount Amount::from_double(double v) {
  if (v < 0 || !std::isfinite(v)) {
    throw NonPositiveAmount("amount must be a finite nonnegative number");
  }
  return Amount(Rational(v));  // exact: every finite double is dyadic
}

Amount Amount::scaled(const Rational& factor) const {
  return Amount(value_ * factor);
}

}  // namespace envelopes
