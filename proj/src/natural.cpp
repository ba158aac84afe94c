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

#include "qhc/natural.h"

#include <cmath>
#include <numbers>

#include "qhc/error.h"

namespace qhc {

Natural parse_decimal(std::string_view text) {
    if (text.empty()) {
        throw InputError("empty decimal string");
    }
    Natural result = 0;
    for (char c : text) {
        if (c < '0' || c > '9') {
            throw InputError("not a decimal natural number: '" + std::string(text) + "'");
        }
        result = result * 10 + (c - '0');
    }
    return result;
}

std::string to_decimal(const Natural &value) {
    return value.str();
}

Natural reduce(const Natural &value, const Natural &modulus) {
    Natural r = value % modulus;
    if (r < 0) {
        r += modulus;
    }
    return r;
}

Natural pow_natural(const Natural &base, unsigned exponent) {
    return boost::multiprecision::pow(base, exponent);
}

std::optional<u128> as_small(const Natural &value) {
    static const Natural limit = Natural(1) << 64;
    if (value < 0 || value > limit) {
        return std::nullopt;
    }
    if (value == limit) {
        return u128(1) << 64;
    }
    return u128(static_cast<std::uint64_t>(value));
}

Natural uniform_below(const Natural &bound, std::mt19937_64 &rng) {
    if (bound <= 0) {
        throw InputError("uniform_below requires a positive bound");
    }
    if (bound == 1) {
        return 0;
    }
    Natural max_value = bound - 1;
    unsigned bits = boost::multiprecision::msb(max_value) + 1;
    unsigned limbs = (bits + 63) / 64;
    unsigned top_bits = bits - 64 * (limbs - 1);
    std::uint64_t top_mask = top_bits == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << top_bits) - 1);
    while (true) {
        Natural candidate = 0;
        for (unsigned i = 0; i < limbs; i++) {
            std::uint64_t limb = rng();
            if (i == 0) {
                limb &= top_mask;
            }
            candidate = (candidate << 64) | Natural(limb);
        }
        if (candidate < bound) {
            return candidate;
        }
    }
}

double ratio(const Natural &value, const Natural &modulus) {
    // Scale both down together so the conversion never overflows a double.
    unsigned bits = boost::multiprecision::msb(modulus) + 1;
    if (bits <= 1000) {
        return value.convert_to<double>() / modulus.convert_to<double>();
    }
    unsigned shift = bits - 1000;
    return Natural(value >> shift).convert_to<double>() / Natural(modulus >> shift).convert_to<double>();
}

namespace {

// r' = min(r, n - r) in [0, n/2]; `flip` records that the sine changes sign.
template <typename AsDouble>
UnitPhase phase_from_folded(bool is_zero, bool is_half, bool is_quarter, bool flip, AsDouble frac) {
    if (is_zero) {
        return {1.0, 0.0};
    }
    if (is_half) {
        return {-1.0, 0.0};
    }
    if (is_quarter) {
        return {0.0, flip ? -1.0 : 1.0};
    }
    double angle = 2.0 * std::numbers::pi * frac();
    double s = std::sin(angle);
    return {std::cos(angle), flip ? -s : s};
}

}  // namespace

UnitPhase unit_phase(const Natural &residue, const Natural &modulus) {
    Natural complement = modulus - residue;
    bool flip = complement < residue;
    const Natural &folded = flip ? complement : residue;
    return phase_from_folded(
        folded == 0, 2 * folded == modulus, 4 * folded == modulus, flip, [&] { return ratio(folded, modulus); });
}

UnitPhase unit_phase(u128 residue, u128 modulus) {
    u128 complement = modulus - residue;
    bool flip = complement < residue;
    u128 folded = flip ? complement : residue;
    // Both halves of a u128 fraction convert exactly enough through long double.
    return phase_from_folded(folded == 0, 2 * folded == modulus, 4 * folded == modulus, flip, [&] {
        return static_cast<double>(static_cast<long double>(folded) / static_cast<long double>(modulus));
    });
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

std::mt19937_64 seeded_engine(std::uint64_t seed, std::uint64_t stream) {
    return std::mt19937_64(mix_seed(seed, stream));
}

double uniform_unit(std::mt19937_64 &rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace qhc
