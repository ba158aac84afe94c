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

#ifndef QHC_NATURAL_H
#define QHC_NATURAL_H

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace qhc {

/// Unbounded-precision integer used for residues and moduli.
using Natural = boost::multiprecision::cpp_int;

using u128 = unsigned __int128;

/// Parses a non-negative decimal string. Throws InputError on anything else.
Natural parse_decimal(std::string_view text);
std::string to_decimal(const Natural &value);

/// Canonical residue of `value` in [0, modulus). Works for negative values.
Natural reduce(const Natural &value, const Natural &modulus);

Natural pow_natural(const Natural &base, unsigned exponent);

/// Value as u128 when it is <= 2^64, otherwise nullopt. Products of two such
/// values reduced below a modulus of that size never overflow u128.
std::optional<u128> as_small(const Natural &value);

/// Uniform draw from [0, bound) by rejection over 64-bit limbs.
Natural uniform_below(const Natural &bound, std::mt19937_64 &rng);

/// Fraction value / modulus as a double, for angle construction.
double ratio(const Natural &value, const Natural &modulus);

/// cos(2*pi*r/n) and sin(2*pi*r/n) for 0 <= r < n. Symmetric reduction keeps
/// cos(r) == cos(n-r) bit-for-bit, and quarter/half turns are exact.
struct UnitPhase {
    double cos;
    double sin;
};
UnitPhase unit_phase(const Natural &residue, const Natural &modulus);
UnitPhase unit_phase(u128 residue, u128 modulus);

/// splitmix64 finalizer; used to derive independent seed streams.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

/// Engine for stream `stream` of `seed`. Streams are schedule independent.
std::mt19937_64 seeded_engine(std::uint64_t seed, std::uint64_t stream = 0);

/// Uniform double in [0, 1) with 53 random bits.
double uniform_unit(std::mt19937_64 &rng);

}  // namespace qhc

#endif
