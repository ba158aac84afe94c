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

#ifndef QHC_BITS_H
#define QHC_BITS_H

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qhc {

/// An assignment to Boolean variables; entry i is the value of variable i+1.
using Bits = std::vector<std::uint8_t>;
using BitsView = std::span<const std::uint8_t>;

/// "0101" -> {0,1,0,1}. Throws InputError on characters other than 0/1.
Bits parse_bits(std::string_view text);
std::string format_bits(BitsView bits);

/// The `index`-th assignment of length n in lexicographic order of the
/// bit string (the first variable is the most significant position).
void assignment_from_index(std::uint64_t index, std::span<std::uint8_t> out);
std::uint64_t index_from_assignment(BitsView bits);

}  // namespace qhc

#endif
