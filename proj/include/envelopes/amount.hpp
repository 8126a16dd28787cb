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

#ifndef ENVELOPES_AMOUNT_HPP_
#define ENVELOPES_AMOUNT_HPP_

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>
#include <string_view>

#include "envelopes/errors.hpp"

namespace envelopes {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// "num/den" with "/1" omitted for integers.
std::string rational_str(const Rational& r);

// Accepts "7", "22/5", "-3/4" and plain decimals like "2.5" (parsed exactly
// as 5/2). Throws UsageError on malformed input.
Rational parse_rational(std::string_view s);

double rational_to_double(const Rational& r);

// An amount of currency units: a nonnegative rational kept in lowest terms.
// All arithmetic here is exact; nothing in the discrete path ever rounds.
// Values are immutable and safe to share across threads.
class Amount {
 public:
  Amount() = default;  // zero
  Amount(int units);   // NOLINT: Amount(10) should read like $10
  explicit Amount(Rational value);

  static Amount parse(std::string_view s);
  // Doubles are dyadic rationals, so this conversion is exact.
  static Amount from_double(double v);

  const Rational& value() const { return value_; }
  bool positive() const { return value_ > 0; }
  bool is_zero() const { return value_ == 0; }

  Amount doubled() const { return Amount(value_ * 2); }
  Amount halved() const { return Amount(value_ / 2); }
  // factor must be >= 0 so the result stays an Amount.
  Amount scaled(const Rational& factor) const;

  double to_double() const { return rational_to_double(value_); }
  std::string str() const { return rational_str(value_); }

  friend Amount operator+(const Amount& a, const Amount& b) {
    return Amount(a.value_ + b.value_);
  }
  friend bool operator==(const Amount& a, const Amount& b) {
    return a.value_ == b.value_;
  }
  friend bool operator!=(const Amount& a, const Amount& b) {
    return a.value_ != b.value_;
  }
  friend bool operator<(const Amount& a, const Amount& b) {
    return a.value_ < b.value_;
  }
  friend bool operator>(const Amount& a, const Amount& b) {
    return a.value_ > b.value_;
  }
  friend bool operator<=(const Amount& a, const Amount& b) {
    return a.value_ <= b.value_;
  }
  friend bool operator>=(const Amount& a, const Amount& b) {
    return a.value_ >= b.value_;
  }

 private:
  Rational value_{};
};

}  // namespace envelopes

#endif  // ENVELOPES_AMOUNT_HPP_
