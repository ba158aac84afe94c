// Copyright 2026 The qhc Authors
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

#ifndef QHC_CLI_H
#define QHC_CLI_H

#include <ostream>
#include <string>
#include <vector>

#include "qhc/serialize.h"

namespace qhc::cli {

inline constexpr const char *kToolName = "qhc";
inline constexpr const char *kToolVersion = "0.1.0";

enum ExitCode : int {
    kExitOk = 0,
    /// Counterexample found, bound refuted, or key search failed.
    kExitCounterexample = 1,
    /// A resource guard refused the computation.
    kExitGuard = 2,
    /// Malformed input or configuration.
    kExitMalformed = 3,
};

/// Runs one subcommand: verify, search-keys, run, profile. `args` excludes the
/// program name. Reports go to files or `out`; diagnostics go to `err`.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

/// The report minus its non-deterministic "timing" member.
Json canonical_report(Json report);

}  // namespace qhc::cli

#endif
