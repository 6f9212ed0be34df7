// Copyright 2026 The elx Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef ELX_TOOLS_CLI_HPP_
#define ELX_TOOLS_CLI_HPP_

#include <iosfwd>
#include <string>
#include <vector>

namespace elx::cli {

// Exit statuses.
inline constexpr int kOk = 0;
inline constexpr int kFailed = 1;  // a check, run or conformance sample failed
inline constexpr int kUsage = 2;   // bad flags, unreadable file, syntax error

// Runs the command line `args` (without the program name). Everything is
// written to `out` once the command is complete; usage errors go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace elx::cli

#endif  // ELX_TOOLS_CLI_HPP_
