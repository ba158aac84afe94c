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

#ifndef QHC_QHASH_H
#define QHC_QHASH_H

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "qhc/natural.h"

namespace qhc {

/// Exact resistance checks sweep every nonzero difference; only for N <= 2^21.
constexpr unsigned kExactGuardLog2 = 21;

enum class CertificationMode { none, exact, monte_carlo };

struct Certification {
    CertificationMode mode = CertificationMode::none;
    /// Monte Carlo only: number of sampled differences and the confidence
    /// attached to `bad_fraction_bound`.
    std::uint64_t trials = 0;
    double confidence = 0.0;
    /// Monte Carlo only: with probability `confidence`, the fraction of
    /// differences whose bias reaches delta is below this.
    double bad_fraction_bound = 0.0;

    bool operator==(const Certification &other) const = default;
};

/// Modulus N and an ordered list of distinct keys in [0, N). Copies share the
/// key storage; certification is carried per value.
class KeySet {
   public:
    KeySet(Natural modulus, std::vector<Natural> keys);

    const Natural &modulus() const {
        return data_->modulus;
    }
    const std::vector<Natural> &keys() const {
        return data_->keys;
    }
    std::size_t size() const {
        return data_->keys.size();
    }
    const std::optional<double> &certified_delta() const {
        return certified_delta_;
    }
    const Certification &certification() const {
        return certification_;
    }
    const std::optional<double> &max_bias() const {
        return max_bias_;
    }
    bool exactly_certified() const {
        return certification_.mode == CertificationMode::exact && certified_delta_.has_value();
    }

    /// Copy carrying a certificate for `delta`.
    KeySet certified(Certification how, double delta, double observed_max_bias) const;
    KeySet uncertified() const;

    /// Same modulus and key list (certificates are ignored).
    bool same_keys(const KeySet &other) const;
    bool operator==(const KeySet &other) const;

    /// u128 copies of N and the keys when N <= 2^64.
    const std::optional<u128> &small_modulus() const {
        return data_->small_modulus;
    }
    const std::vector<u128> &small_keys() const {
        return data_->small_keys;
    }

   private:
    struct Data {
        Natural modulus;
        std::vector<Natural> keys;
        std::optional<u128> small_modulus;
        std::vector<u128> small_keys;
    };
    std::shared_ptr<const Data> data_;
    std::optional<double> certified_delta_;
    Certification certification_;
    std::optional<double> max_bias_;
};

/// |h_K(v)> as 2d real amplitudes: entry 2i is cos(2 pi k_i v / N)/sqrt(d),
/// entry 2i+1 is sin(2 pi k_i v / N)/sqrt(d).
struct HashState {
    KeySet key_set;
    Natural value;
    std::vector<double> amplitudes;
};

struct SwapOutcome {
    double fidelity;
    double accept_probability;
};

/// Throws InputError unless 0 <= v < N. k_i * v is reduced mod N exactly
/// before the angle is formed.
HashState build_hash(const KeySet &keys, const Natural &value);

/// (1/d) sum_i cos(2 pi k_i delta / N) for a difference `difference` mod N.
double bias(const KeySet &keys, const Natural &difference);

/// <a|b> via the cosine sum over (u - v) mod N. Throws InputError when the
/// states use different key sets.
double inner_product(const HashState &a, const HashState &b);

/// F = <a|b>, accept = (1 + F^2) / 2.
SwapOutcome swap_test(const HashState &a, const HashState &b);
SwapOutcome swap_outcome(double fidelity);

/// Number of accepting outcomes in `trials` independent Bernoulli draws.
std::uint64_t sample_swap(const SwapOutcome &outcome, std::uint64_t seed, std::uint64_t trials);

enum class ResistanceStatus { certified, refuted, too_large };

struct ResistanceVerdict {
    ResistanceStatus status = ResistanceStatus::too_large;
    /// max |bias| over the differences examined.
    double max_bias = 0.0;
    /// Smallest difference attaining max_bias, with its signed bias.
    Natural worst_difference = 0;
    double worst_bias = 0.0;
    /// The checked key set annotated with its certificate (certified only).
    std::optional<KeySet> annotated;
    std::uint64_t differences_checked = 0;
};

/// Exact sweep over all nonzero differences. Returns too_large (with no
/// computation) when N > 2^21; use verify_resistance_sampled there.
ResistanceVerdict verify_resistance(const KeySet &keys, double delta, unsigned threads = 0);

/// Monte Carlo check over `trials` uniformly drawn nonzero differences.
/// Never yields an exact certificate.
ResistanceVerdict verify_resistance_sampled(const KeySet &keys, double delta, std::uint64_t trials, std::uint64_t seed);

/// ceil((2 / delta^2) * ln(2N)), the Hoeffding/union-bound key count.
std::uint64_t planned_key_count(const Natural &modulus, double delta);

struct KeySearchOptions {
    /// Overrides the planned key count (still capped at N).
    std::optional<std::uint64_t> key_count;
    /// Above the exact guard, certify by sampling this many differences.
    /// Zero means refuse with GuardError instead.
    std::uint64_t sampled_trials = 0;
    unsigned threads = 0;
};

struct KeySearchResult {
    std::optional<KeySet> key_set;
    std::uint64_t key_count = 0;
    std::size_t attempts = 0;
    /// Smallest max |bias| among the attempts.
    double best_max_bias = 1.0;
};

/// Draws d distinct uniform keys per attempt (attempt a uses seed stream a)
/// and returns the first set that certifies. When d >= N the full residue
/// set is used. Throws InputError for delta outside (0, 1).
KeySearchResult search_key_set(
    const Natural &modulus, double delta, std::uint64_t seed, std::size_t max_attempts,
    const KeySearchOptions &options = {});

/// ceil(log2 d) + 1.
unsigned hash_qubits(std::size_t key_count);
unsigned hash_qubits(const KeySet &keys);

}  // namespace qhc

#endif
