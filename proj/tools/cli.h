// Copyright 2026 The egoscene Authors
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

#ifndef EGOSCENE_TOOLS_CLI_H_
#define EGOSCENE_TOOLS_CLI_H_

#include <ostream>
#include <string>
#include <vector>

namespace egoscene::tools {

inline constexpr int kExitOk = 0;
inline constexpr int kExitData = 2;
inline constexpr int kExitInternal = 3;
inline constexpr int kExitUsage = 64;

// Runs the egoscene command line. `args` excludes the program name. Reports
// go to `out`, diagnostics to `err`; the return value is the process exit
// code.
int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err);

}  // namespace egoscene::tools

#endif  // EGOSCENE_TOOLS_CLI_H_
