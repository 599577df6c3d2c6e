// Copyright 2026 The Controversy Toolkit Authors.
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

// The `controversy` command line. Exit codes: 0 success, 1 usage error,
// 2 data error. Results go to `out`; logs and errors go to `err`.

#ifndef CONTROVERSY_TOOLS_CLI_APP_H_
#define CONTROVERSY_TOOLS_CLI_APP_H_

#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace controversy {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;

// `args` excludes the program name.
int RunCli(const std::vector<std::string> &args, std::ostream &out,
           std::ostream &err);

// Every subcommand with the long flags its parser accepts.
std::vector<std::pair<std::string, std::vector<std::string>>> CliFlagTable();

}  // namespace controversy

#endif  // CONTROVERSY_TOOLS_CLI_APP_H_
