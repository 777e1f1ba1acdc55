// Copyright 2026 The lpproj Authors.
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

#ifndef LPPROJ_CLI_EXECUTE_HPP_
#define LPPROJ_CLI_EXECUTE_HPP_

#include <iosfwd>

#include "lpproj/cli/config.hpp"

namespace lpproj::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerdictFailed = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitNonConvergence = 3;
inline constexpr int kExitIo = 4;

/// Runs the command and writes its artifact. Output without --out goes to
/// `out`. Returns kExitOk or kExitVerdictFailed; errors propagate.
int execute(const RunConfig& config, std::ostream& out);

/// parse_config + execute, mapping exceptions to exit codes with a single
/// `error: <kind>: <message>` line on `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace lpproj::cli

#endif  // LPPROJ_CLI_EXECUTE_HPP_
