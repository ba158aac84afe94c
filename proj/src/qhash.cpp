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

#include "qhc/qhash.h"

#include <cmath>
#include <numbers>
#include <set>

#include "qhc/error.h"
#include "qhc/parallel.h"

namespace qhc {

KeySet::KeySet(Natural modulus, std::vector<Natural> keys) {
    if (modulus < 2) {
        throw InputError("key-set modulus must be at least 2");
    }
    if (keys.empty()) {
        throw InputError("a key set needs at least one key");
    }
    std::set<Natural> seen;
    for (const auto &k : keys) {
        if (k < 0 || k >= modulus) {
            throw InputError("key " + to_decimal(k) + " is outside [0, " + to_decimal(modulus) + ")");
        }
        if (!seen.insert(k).second) {
            throw InputError("duplicate key " + to_decimal(k));
        }
    }
    auto data = std::make_shared<Data>();
    data->small_modulus = as_small(modulus);
    if (data->small_modulus) {
        for (const auto &k : keys) {
            data->small_keys.push_back(*as_small(k));
        }
    }
    data->modulus = std::move(modulus);
    data->keys = std::move(keys);
    data_ = std::move(data);
}

KeySet KeySet::certified(Certification how, double delta, double observed_max_bias) const {
    KeySet copy = *this;
    copy.certification_ = how;
    copy.certified_delta_ = delta;
    copy.max_bias_ = observed_max_bias;
    return copy;
}

KeySet KeySet::uncertified() const {
    KeySet copy = *this;
    copy.certification_ = {};
    copy.certified_delta_.reset();
    copy.max_bias_.reset();
    return copy;
}

bool KeySet::same_keys(const KeySet &other) const {
    return data_ == other.data_ || (data_->modulus == other.data_->modulus && data_->keys == other.data_->keys);
}

bool KeySet::operator==(const KeySet &other) const {
    return same_keys(other) && certified_delta_ == other.certified_delta_ &&
           certification_ == other.certification_ && max_bias_ == other.max_bias_;
}

namespace {

UnitPhase key_phase(const KeySet &ks, std::size_t i, const Natural &x, const std::optional<u128> &small_x) {
    if (ks.small_modulus()) {
        u128 n = *ks.small_modulus();
        return unit_phase(ks.small_keys()[i] * *small_x % n, n);
    }
    return unit_phase(Natural(ks.keys()[i] * x % ks.modulus()), ks.modulus());
}

void check_value(const KeySet &ks, const Natural &v) {
    if (v < 0 || v >= ks.modulus()) {
        throw InputError("hashed value " + to_decimal(v) + " is not reduced into [0, " + to_decimal(ks.modulus()) + ")");
    }
}

}  // namespace

HashState build_hash(const KeySet &keys, const Natural &value) {
    check_value(keys, value);
    std::size_t d = keys.size();
    double scale = 1.0 / std::sqrt(static_cast<double>(d));
    auto small_v = as_small(value);
    std::vector<double> amps(2 * d);
    for (std::size_t i = 0; i < d; i++) {
        UnitPhase p = key_phase(keys, i, value, small_v);
        amps[2 * i] = p.cos * scale;
        amps[2 * i + 1] = p.sin * scale;
    }
    return HashState{keys, value, std::move(amps)};
}

double bias(const KeySet &keys, const Natural &difference) {
    Natural delta = reduce(difference, keys.modulus());
    auto small_delta = as_small(delta);
    double sum = 0.0;
    for (std::size_t i = 0; i < keys.size(); i++) {
        sum += key_phase(keys, i, delta, small_delta).cos;
    }
    return sum / static_cast<double>(keys.size());
}

double inner_product(const HashState &a, const HashState &b) {
    if (!a.key_set.same_keys(b.key_set)) {
        throw InputError("inner product of hashes built from different key sets");
    }
    return bias(a.key_set, a.value - b.value);
}

SwapOutcome swap_outcome(double fidelity) {
    return SwapOutcome{fidelity, (1.0 + fidelity * fidelity) / 2.0};
}

SwapOutcome swap_test(const HashState &a, const HashState &b) {
    return swap_outcome(inner_product(a, b));
}

std::uint64_t sample_swap(const SwapOutcome &outcome, std::uint64_t seed, std::uint64_t trials) {
    auto rng = seeded_engine(seed);
    std::uint64_t accepted = 0;
    for (std::uint64_t t = 0; t < trials; t++) {
        if (uniform_unit(rng) < outcome.accept_probability) {
            accepted++;
        }
    }
    return accepted;
}

namespace {

struct Worst {
    double abs_bias = -1.0;
    double bias = 0.0;
    Natural difference = 0;
};

ResistanceVerdict finish_verdict(
    const KeySet &keys, double delta, const Worst &worst, std::uint64_t checked, Certification how) {
    ResistanceVerdict v;
    v.max_bias = worst.abs_bias < 0 ? 0.0 : worst.abs_bias;
    v.worst_bias = worst.bias;
    v.worst_difference = worst.difference;
    v.differences_checked = checked;
    if (v.max_bias < delta) {
        v.status = ResistanceStatus::certified;
        v.annotated = keys.certified(how, delta, v.max_bias);
    } else {
        v.status = ResistanceStatus::refuted;
    }
    return v;
}

}  // namespace

ResistanceVerdict verify_resistance(const KeySet &keys, double delta, unsigned threads) {
    static const Natural guard = Natural(1) << kExactGuardLog2;
    if (keys.modulus() > guard) {
        return ResistanceVerdict{};
    }
    auto n = static_cast<std::uint64_t>(keys.modulus());
    std::size_t d = keys.size();
    std::vector<double> table(n);
    for (std::uint64_t r = 0; r < n; r++) {
        table[r] = unit_phase(u128(r), u128(n)).cos;
    }
    std::vector<std::uint64_t> k(d);
    for (std::size_t i = 0; i < d; i++) {
        k[i] = static_cast<std::uint64_t>(keys.small_keys()[i]);
    }

    std::vector<Worst> per_chunk(max_chunks(threads));
    parallel_chunks(n - 1, threads, [&](std::size_t chunk, std::uint64_t begin, std::uint64_t end) {
        std::uint64_t first = begin + 1;
        std::vector<std::uint64_t> r(d);
        for (std::size_t i = 0; i < d; i++) {
            r[i] = k[i] * first % n;
        }
        Worst &w = per_chunk[chunk];
        for (std::uint64_t diff = first; diff <= end; diff++) {
            double sum = 0.0;
            for (std::size_t i = 0; i < d; i++) {
                sum += table[r[i]];
                r[i] += k[i];
                if (r[i] >= n) {
                    r[i] -= n;
                }
            }
            double b = sum / static_cast<double>(d);
            if (std::abs(b) > w.abs_bias) {
                w = {std::abs(b), b, diff};
            }
        }
    });
    Worst worst;
    for (const auto &w : per_chunk) {
        if (w.abs_bias > worst.abs_bias) {
            worst = w;
        }
    }
    return finish_verdict(keys, delta, worst, n - 1, Certification{CertificationMode::exact});
}

ResistanceVerdict verify_resistance_sampled(
    const KeySet &keys, double delta, std::uint64_t trials, std::uint64_t seed) {
    if (trials == 0) {
        throw InputError("sampled verification needs at least one trial");
    }
    auto rng = seeded_engine(seed, 0x5eed);
    Worst worst;
    Natural span = keys.modulus() - 1;
    for (std::uint64_t t = 0; t < trials; t++) {
        Natural diff = uniform_below(span, rng) + 1;
        double b = bias(keys, diff);
        double a = std::abs(b);
        if (a > worst.abs_bias || (a == worst.abs_bias && diff < worst.difference)) {
            worst = {a, b, std::move(diff)};
        }
    }
    constexpr double kConfidence = 0.99;
    Certification how{
        CertificationMode::monte_carlo, trials, kConfidence,
        std::log(1.0 / (1.0 - kConfidence)) / static_cast<double>(trials)};
    return finish_verdict(keys, delta, worst, trials, how);
}

std::uint64_t planned_key_count(const Natural &modulus, double delta) {
    if (!(delta > 0.0 && delta < 1.0)) {
        throw InputError("delta out of (0,1)");
    }
    unsigned bits = boost::multiprecision::msb(modulus) + 1;
    // ln N = bits * ln 2 + ln(N / 2^bits)
    double log_n = bits * std::numbers::ln2 + std::log(ratio(modulus, Natural(1) << bits));
    double count = (2.0 / (delta * delta)) * (std::numbers::ln2 + log_n);
    return static_cast<std::uint64_t>(std::ceil(count));
}

KeySearchResult search_key_set(
    const Natural &modulus, double delta, std::uint64_t seed, std::size_t max_attempts,
    const KeySearchOptions &options) {
    if (!(delta > 0.0 && delta < 1.0)) {
        throw InputError("delta out of (0,1)");
    }
    if (modulus < 2) {
        throw InputError("key-set modulus must be at least 2");
    }
    if (max_attempts == 0) {
        throw InputError("key search needs at least one attempt");
    }
    static const Natural guard = Natural(1) << kExactGuardLog2;
    bool exact = modulus <= guard;
    if (!exact && options.sampled_trials == 0) {
        throw GuardError(
            "exact certification requires N <= 2^" + std::to_string(kExactGuardLog2) +
            "; request Monte Carlo certification with a trial count");
    }

    KeySearchResult result;
    std::uint64_t d = options.key_count.value_or(planned_key_count(modulus, delta));
    if (d == 0) {
        throw InputError("key count must be positive");
    }
    bool full = Natural(d) >= modulus;
    if (full) {
        d = static_cast<std::uint64_t>(modulus);
    }
    result.key_count = d;

    for (std::size_t attempt = 0; attempt < max_attempts; attempt++) {
        result.attempts = attempt + 1;
        std::vector<Natural> keys;
        keys.reserve(d);
        if (full) {
            for (std::uint64_t k = 0; k < d; k++) {
                keys.emplace_back(k);
            }
        } else {
            auto rng = seeded_engine(seed, attempt);
            std::set<Natural> seen;
            while (keys.size() < d) {
                Natural k = uniform_below(modulus, rng);
                if (seen.insert(k).second) {
                    keys.push_back(std::move(k));
                }
            }
        }
        KeySet candidate(modulus, std::move(keys));
        ResistanceVerdict verdict =
            exact ? verify_resistance(candidate, delta, options.threads)
                  : verify_resistance_sampled(candidate, delta, options.sampled_trials, mix_seed(seed, attempt));
        result.best_max_bias = std::min(result.best_max_bias, verdict.max_bias);
        if (verdict.status == ResistanceStatus::certified) {
            result.key_set = std::move(verdict.annotated);
            return result;
        }
        if (full) {
            break;
        }
    }
    return result;
}

unsigned hash_qubits(std::size_t key_count) {
    if (key_count == 0) {
        throw InputError("a hash needs at least one key");
    }
    unsigned bits = 0;
    while ((std::size_t{1} << bits) < key_count) {
        bits++;
    }
    return bits + 1;
}

unsigned hash_qubits(const KeySet &keys) {
    return hash_qubits(keys.size());
}

}  // namespace qhc
