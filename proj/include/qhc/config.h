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

#ifndef QHC_CONFIG_H
#define QHC_CONFIG_H

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qhc/boolfn.h"
#include "qhc/error.h"
#include "qhc/protocol.h"
#include "qhc/serialize.h"

namespace qhc {

/// A config error carrying the JSON path of the offending field.
struct ConfigError : InputError {
    ConfigError(const std::string &path, const std::string &message)
        : InputError(path + ": " + message), json_path(path) {
    }
    std::string json_path;
};

/// Builtin name with parameters, a conjunction of two descriptors
/// ("CONJ"), or inline polynomials ("INLINE", target f = [g_1 = 0]).
struct FunctionDescriptor {
    std::string name;
    std::size_t n = 0;
    std::uint64_t m = 0;
    std::vector<FunctionDescriptor> parts;
    std::vector<LinearPolynomial> polynomials;

    bool operator==(const FunctionDescriptor &other) const = default;
};

struct SplitConfig {
    std::optional<std::size_t> n1;
    std::optional<std::size_t> n2;
    std::vector<std::size_t> forwarded;

    bool operator==(const SplitConfig &other) const = default;
};

enum class KeySourceKind { search, file };

struct KeySource {
    KeySourceKind kind = KeySourceKind::search;
    std::uint64_t seed = 0;
    std::size_t attempts = 10;
    /// Hash modulus 2^log2_n instead of the ring modulus.
    std::optional<unsigned> log2_n;
    std::optional<std::uint64_t> key_count;
    std::uint64_t sampled_trials = 0;
    std::string path;

    bool operator==(const KeySource &other) const = default;
};

enum class RunMode { exact, sampled, profile };

std::string run_mode_name(RunMode mode);

struct InputPair {
    std::string alice;
    std::string bob;

    bool operator==(const InputPair &other) const = default;
};

struct ExperimentConfig {
    FunctionDescriptor function;
    SplitConfig split;
    double delta = 0.0;
    KeySource keys;
    RunMode mode = RunMode::exact;
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    Topology topology = Topology::one_way;
    std::vector<InputPair> inputs;
    std::string output;

    bool operator==(const ExperimentConfig &other) const = default;
};

/// Validates a config document. Throws ConfigError naming the first bad
/// field. `base_dir` resolves relative key-file paths.
ExperimentConfig parse_config(const Json &document, const std::string &base_dir = "");
Json serialize_config(const ExperimentConfig &config);

/// Number of input variables a descriptor denotes.
std::size_t descriptor_arity(const FunctionDescriptor &d);

/// Builds the function, its characteristic and the configured split.
FunctionInstance build_instance(const FunctionDescriptor &d, const SplitConfig &split);

/// Acquires key sets per the config (search or file) and assembles the
/// protocol. Searches that fail or files whose exact certificate does not
/// re-verify raise KeySetFailure.
struct KeySetFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};
ProtocolSpec prepare_spec(const ExperimentConfig &config, unsigned threads = 0);

}  // namespace qhc

#endif
