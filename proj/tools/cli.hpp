// Copyright 2026 The cvdkit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CVDKIT_TOOLS_CLI_HPP_
#define CVDKIT_TOOLS_CLI_HPP_

#include <iosfwd>

namespace cvd::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 2,      // bad flags or schema violations
  kIo = 3,
  kMismatch = 4,   // inputs that are individually valid but do not belong together
  kEnvironment = 5 // e.g. the port is taken
};

// Runs one invocation. JSON results go to `out`, diagnostics to `err`.
// stdin is read when an input path is "-".
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace cvd::cli

#endif  // CVDKIT_TOOLS_CLI_HPP_
