// Copyright 2026 The growthlab Authors
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

// The growthlab command line: build, check, witness and algebra subcommands.

#ifndef GROWTHLAB_CLI_H_
#define GROWTHLAB_CLI_H_

#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

#include "growthlab/growthfn.h"

namespace growthlab::cli {

inline constexpr char kToolName[] = "growthlab";
inline constexpr char kToolVersion[] = "0.1.0";

enum ExitCode : int {
  kExitPass = 0,
  kExitViolation = 1,
  kExitPolicy = 2,  // ledger failure, refused request, bad usage
  kExitIo = 3,
};

// Runs one command line; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Reads schedule.json and table.csv from a build directory, rebuilds the
// table from the schedule and checks every stored row against it.
GrowthTable load_build(const std::filesystem::path& dir);

}  // namespace growthlab::cli

#endif  // GROWTHLAB_CLI_H_
