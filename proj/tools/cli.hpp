// Copyright 2026 The ftopt Authors
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

#ifndef FTOPT_TOOLS_CLI_HPP
#define FTOPT_TOOLS_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace ftopt::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInfeasible = 1;
inline constexpr int kExitUsage = 2;

/// Runs the command line `args` (program name excluded). Reports go to `out`
/// unless --out is given; diagnostics go to `err`.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

/// Prepends the flags recorded in a --config JSON file (either a bare
/// parameter object or a previous report's "config" block). Flags the caller
/// passes explicitly are never overridden.
std::vector<std::string> expand_config(const std::vector<std::string> &args);

/// Angle text: a number, "pi", "pi/N", "N*pi" or "Npi".
double parse_angle(const std::string &text);

}  // namespace ftopt::cli

#endif
