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

#ifndef QHC_PROTOCOL_H
#define QHC_PROTOCOL_H

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qhc/boolfn.h"
#include "qhc/qhash.h"

namespace qhc {

/// Largest n1 + n2 that error_profile will enumerate.
constexpr std::size_t kProfileGuard = 20;

/// Tolerance for "accepts with certainty".
constexpr double kCertaintyTolerance = 1e-12;

enum class Topology { one_way, smp };

std::string topology_name(Topology t);
std::optional<Topology> topology_from_name(const std::string &name);

/// A function split between Alice (n1 bits) and Bob (n2 bits), one
/// decomposition and one key set per characteristic polynomial. Key sets may
/// have a modulus larger than the ring's: hashed values are canonical residues
/// in [0, m), which collide mod N exactly when they collide mod m.
class ProtocolSpec {
   public:
    ProtocolSpec(FunctionInstance instance, std::vector<KeySet> key_sets, Topology topology = Topology::one_way);

    const FunctionInstance &instance() const {
        return instance_;
    }
    const BooleanFunction &function() const {
        return instance_.function;
    }
    const std::vector<Decomposition> &pairs() const {
        return instance_.pairs;
    }
    const std::vector<KeySet> &key_sets() const {
        return key_sets_;
    }
    Topology topology() const {
        return topology_;
    }
    std::size_t n1() const {
        return instance_.n1;
    }
    std::size_t n2() const {
        return instance_.n2;
    }
    const RingModulus &modulus() const {
        return instance_.pairs.front().g1.modulus();
    }
    const std::vector<std::size_t> &forwarded() const {
        return instance_.pairs.front().forwarded;
    }
    std::size_t forwarded_count() const {
        return forwarded().size();
    }
    /// All key sets carry an exact certificate.
    bool bounds_certified() const;
    /// Largest delta among the key sets' certificates, if every set has one.
    std::optional<double> bound_delta() const;

   private:
    FunctionInstance instance_;
    std::vector<KeySet> key_sets_;
    Topology topology_;
};

/// Qubit accounting for one run of the protocol.
struct CommCost {
    Topology topology = Topology::one_way;
    std::size_t pairs = 0;
    /// Sum over pairs of ceil(log2 d) + 1.
    unsigned alice_hash_qubits = 0;
    unsigned bob_hash_qubits = 0;
    unsigned forwarded_bits = 0;
    /// One-way: Alice's hashes plus forwarded bits.
    unsigned alice_to_bob = 0;
    /// SMP: each party's message to the referee.
    unsigned alice_to_referee = 0;
    unsigned bob_to_referee = 0;
    unsigned total = 0;
    /// Bits Alice would send to reveal her whole input.
    std::size_t classical_baseline = 0;
};

CommCost comm_cost(const ProtocolSpec &spec);
CommCost comm_cost(const ProtocolSpec &spec, Topology topology);

/// Cost from the planned key count ceil((2/delta^2) ln(2N)) without drawing
/// any keys; used for sizes beyond exact search.
CommCost plan_comm_cost(
    std::size_t pairs, const Natural &modulus, double delta, std::size_t forwarded, std::size_t n1,
    Topology topology = Topology::one_way);

struct PairResult {
    Natural alice_value;
    Natural bob_value;
    double fidelity;
    double accept_probability;
};

struct RunReport {
    Bits sigma;
    Bits gamma;
    bool f_value = false;
    /// Product over pairs of (1 + F_j^2) / 2.
    double exact_accept = 0.0;
    std::optional<bool> sampled;
    std::optional<std::uint64_t> seed;
    std::vector<PairResult> pairs;
    CommCost cost;
    /// False when some key set lacks an exact certificate.
    bool bounds_certified = false;

    std::vector<double> fidelities() const;
    unsigned qubit_cost() const {
        return cost.total;
    }
};

/// One-way execution: Alice hashes g1_j(sigma), Bob hashes -g2_j(gamma, fwd)
/// and SWAP-tests each pair; output 1 iff every test accepts.
RunReport run_exact(const ProtocolSpec &spec, BitsView sigma, BitsView gamma);

/// run_exact plus one sampled measurement per pair (pair j uses seed stream j).
RunReport run_sampled(const ProtocolSpec &spec, BitsView sigma, BitsView gamma, std::uint64_t seed);

/// Both parties send their hashes to a referee. Requires k = 0. With a seed
/// the referee's measurements are also sampled.
RunReport run_smp(
    const ProtocolSpec &spec, BitsView sigma, BitsView gamma, std::optional<std::uint64_t> seed = std::nullopt);

/// Number of accepting runs out of `trials` sampled runs on one input.
std::uint64_t sample_acceptance(
    const ProtocolSpec &spec, BitsView sigma, BitsView gamma, std::uint64_t seed, std::uint64_t trials);

struct ProfileRow {
    std::uint64_t sigma_index;
    std::uint64_t gamma_index;
    bool f;
    double exact_accept;
};

constexpr std::size_t kHistogramBins = 20;

struct ErrorProfile {
    std::string function_id;
    std::size_t n1 = 0;
    std::size_t n2 = 0;
    /// Max exact_accept over f = 0 inputs; 0 when there are none.
    double worst_false_accept = 0.0;
    std::optional<Bits> worst_sigma;
    std::optional<Bits> worst_gamma;
    /// exact_accept over f = 0 inputs in 20 equal bins on [0, 1].
    std::vector<std::uint64_t> histogram = std::vector<std::uint64_t>(kHistogramBins, 0);
    std::uint64_t zero_inputs = 0;
    std::uint64_t one_inputs = 0;
    /// f = 1 inputs whose acceptance is not 1 (must be zero).
    std::uint64_t one_sided_violations = 0;
    double min_accept_on_ones = 1.0;
    /// (1 + delta^2) / 2 for the key sets' delta, with its provenance.
    std::optional<double> bound;
    bool bound_certified = false;
    /// delta/2 + 1/2, reported next to the main bound for comparison.
    std::optional<double> secondary_bound;
    std::vector<ProfileRow> rows;

    bool within_bound(double tolerance = 1e-9) const {
        return bound && worst_false_accept <= *bound + tolerance;
    }
};

/// Exhaustive run over all (sigma, gamma). Throws GuardError when
/// n1 + n2 > kProfileGuard.
ErrorProfile error_profile(const ProtocolSpec &spec, unsigned threads = 0);

}  // namespace qhc

#endif
