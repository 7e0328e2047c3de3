// Copyright 2026 The splitsamp Authors
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

#ifndef SPLITSAMP_TOOLS_CLI_CLI_H_
#define SPLITSAMP_TOOLS_CLI_CLI_H_

#include <iosfwd>
#include <string>
#include <vector>

namespace splitsamp::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitInput = 2;

// Runs one command line (args excludes the program name) and returns the
// exit status: 0 success, 1 internal error or failed verification, 2 bad
// input.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace splitsamp::cli

#endif  // SPLITSAMP_TOOLS_CLI_CLI_H_
