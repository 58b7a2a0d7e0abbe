// Copyright 2026 The btbt-neuron Authors
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

#ifndef BTBT_TOOLS_CLI_H_
#define BTBT_TOOLS_CLI_H_

#include <iosfwd>
#include <string>
#include <vector>

namespace btbt::cli {

enum ExitCode : int {
  kOk = 0,
  kUsageError = 1,  // bad flags or configuration
  kRuntimeError = 2,  // data or simulation failure
};

// Runs one `btbt` invocation. `args` excludes the program name.
int Run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace btbt::cli

#endif  // BTBT_TOOLS_CLI_H_
