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

#ifndef ENVELOPES_ERRORS_HPP_
#define ENVELOPES_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace envelopes {

// Base of all domain errors. `code()` is the stable machine-readable name
// emitted by the CLI as {"error": <code>, "message": ...}.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& message)
      : std::runtime_error(message), code_(std::move(code)) {}
  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

#define ENVELOPES_DEFINE_ERROR(Name)                                   \
  class Name : public Error {                                          \
   public:                                                             \
    explicit Name(const std::string& message) : Error(#Name, message) {} \
  }

ENVELOPES_DEFINE_ERROR(NonPositiveAmount);
ENVELOPES_DEFINE_ERROR(NegativeIndex);
ENVELOPES_DEFINE_ERROR(MassExceedsOne);
ENVELOPES_DEFINE_ERROR(ImproperPrior);
ENVELOPES_DEFINE_ERROR(NonPositivePoint);
ENVELOPES_DEFINE_ERROR(UnattainableObservation);
ENVELOPES_DEFINE_ERROR(ZeroTrials);
ENVELOPES_DEFINE_ERROR(BudgetExceeded);
ENVELOPES_DEFINE_ERROR(EqualNumbers);
ENVELOPES_DEFINE_ERROR(NonPositiveNumbers);
ENVELOPES_DEFINE_ERROR(PrecisionExhausted);
ENVELOPES_DEFINE_ERROR(SearchFailed);
ENVELOPES_DEFINE_ERROR(UsageError);

#undef ENVELOPES_DEFINE_ERROR

}  // namespace envelopes

#endif  // ENVELOPES_ERRORS_HPP_
