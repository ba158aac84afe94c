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

#ifndef QHC_ERROR_H
#define QHC_ERROR_H

#include <stdexcept>
#include <string>

namespace qhc {

/// Malformed or out-of-domain input: wrong lengths, unreduced residues,
/// mismatched key sets, bad parameters.
struct InputError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A computation refused because it would exceed an enumeration or
/// exact-verification guard. Never silently replaced by sampling.
struct GuardError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace qhc

#endif
