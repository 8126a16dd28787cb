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

#ifndef ENVELOPES_CLI_HPP_
#define ENVELOPES_CLI_HPP_

#include <iosfwd>
#include <string>
#include <vector>

namespace envelopes {

// Runs the command line (arguments exclude the program name). Results go to
// `out`; errors are single-line JSON on `err`. Returns the exit code:
// 0 success, 1 domain error, 2 usage error.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace envelopes

#endif  // ENVELOPES_CLI_HPP_
