// Copyright 2026 The osum Authors.
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

#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace osum {

// Environment variable naming the default data directory.
inline constexpr const char* kDataDirEnv = "OSUM_DATA_DIR";

// Runs one CLI invocation; `args` excludes the program name. Returns 0 on
// success, 1 on a runtime error and 2 on a usage error.
//
// Settings come from, in decreasing precedence: command-line flags, the
// --config JSON file, the OSUM_DATA_DIR environment variable (data
// directory only), built-in defaults. Config keys are long flag names
// without dashes; a nested object named after a subcommand holds that
// subcommand's settings.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace osum
