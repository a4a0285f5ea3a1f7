// Copyright 2026 The nonstop-carriers Authors
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

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace nonstop::cli {

enum ExitCode : int {
  kOk = 0,
  kInputError = 2,
  kVerificationFailure = 3,
  kSimulationDivergence = 4,
};

// Environment variable naming the default output directory.
inline constexpr const char* kOutDirEnv = "NONSTOP_OUT_DIR";

// Runs one command line (args[0] is the program name) and returns the exit
// code. Commands: cycles, plan, verify, simulate, sweep.
int Run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace nonstop::cli
