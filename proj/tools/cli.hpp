// Copyright 2026 The qregress Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QREGRESS_TOOLS_CLI_HPP
#define QREGRESS_TOOLS_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace qregress::cli {

enum ExitCode : int { kOk = 0, kContractViolation = 1, kUsage = 2 };

/// Parses `args` (without the program name) and runs the selected
/// subcommand. Reports go to `out`, diagnostics to `err`.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qregress::cli

#endif  // QREGRESS_TOOLS_CLI_HPP
