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

#include "qhc/boolfn.h"

#include <algorithm>
#include <limits>
#include <set>

#include "qhc/error.h"
#include "qhc/parallel.h"

namespace qhc {

Bits parse_bits(std::string_view text) {
    Bits out;
    out.reserve(text.size());
    for (char c : text) {
        if (c != '0' && c != '1') {
            throw InputError("bit string may only contain '0' and '1': '" + std::string(text) + "'");
        }
        out.push_back(static_cast<std::uint8_t>(c - '0'));
    }
    return out;
}

std::string format_bits(BitsView bits) {
    std::string out;
    out.reserve(bits.size());
    for (auto b : bits) {
        out.push_back(b ? '1' : '0');
    }
    return out;
}

void assignment_from_index(std::uint64_t index, std::span<std::uint8_t> out) {
    std::size_t n = out.size();
    for (std::size_t i = 0; i < n; i++) {
        out[i] = static_cast<std::uint8_t>((index >> (n - 1 - i)) & 1);
    }
}

std::uint64_t index_from_assignment(BitsView bits) {
    std::uint64_t index = 0;
    for (auto b : bits) {
        index = (index << 1) | (b & 1);
    }
    return index;
}

RingModulus::RingModulus(Natural m) : m_(std::move(m)) {
    if (m_ < 2) {
        throw InputError("modulus must be at least 2, got " + to_decimal(m_));
    }
}

LinearPolynomial::LinearPolynomial(RingModulus modulus, Natural constant, std::vector<Natural> coeffs)
    : modulus_(std::move(modulus)), constant_(modulus_.reduce(constant)), coeffs_(std::move(coeffs)) {
    for (auto &c : coeffs_) {
        c = modulus_.reduce(c);
    }
}

LinearPolynomial LinearPolynomial::zero(RingModulus modulus, std::size_t variables) {
    return LinearPolynomial(std::move(modulus), 0, std::vector<Natural>(variables, Natural(0)));
}

LinearPolynomial LinearPolynomial::rereduced() const {
    return LinearPolynomial(modulus_, constant_, coeffs_);
}

Natural eval_poly(const LinearPolynomial &p, BitsView assignment) {
    if (assignment.size() != p.variables()) {
        throw InputError(
            "assignment has " + std::to_string(assignment.size()) + " bits but the polynomial has " +
            std::to_string(p.variables()) + " variables");
    }
    Natural acc = p.constant();
    for (std::size_t i = 0; i < assignment.size(); i++) {
        if (assignment[i] > 1) {
            throw InputError("assignment entries must be 0 or 1");
        }
        if (assignment[i]) {
            acc += p.coeffs()[i];
        }
    }
    return p.modulus().reduce(acc);
}

BooleanFunction::BooleanFunction(std::string name, std::size_t arity, Rule rule)
    : name_(std::move(name)), arity_(arity), rule_(std::move(rule)) {
}

BooleanFunction BooleanFunction::from_table(std::string name, std::size_t arity, std::vector<bool> table) {
    if (arity >= 63 || table.size() != (std::uint64_t{1} << arity)) {
        throw InputError("truth table size must be 2^arity");
    }
    return BooleanFunction(std::move(name), arity, [table = std::move(table)](BitsView in) {
        return static_cast<bool>(table[index_from_assignment(in)]);
    });
}

bool BooleanFunction::operator()(BitsView input) const {
    if (input.size() != arity_) {
        throw InputError(
            "function " + name_ + " expects " + std::to_string(arity_) + " bits, got " +
            std::to_string(input.size()));
    }
    return rule_(input);
}

Characteristic::Characteristic(std::vector<LinearPolynomial> polys, BooleanFunction f)
    : polynomials(std::move(polys)), target(std::move(f)) {
    if (polynomials.empty()) {
        throw InputError("a characteristic needs at least one polynomial");
    }
    for (const auto &p : polynomials) {
        if (!(p.modulus() == polynomials.front().modulus())) {
            throw InputError("all polynomials of a characteristic must share one modulus");
        }
        if (p.variables() != target.arity()) {
            throw InputError("characteristic polynomial arity does not match the function arity");
        }
    }
}

Decomposition::Decomposition(LinearPolynomial alice, LinearPolynomial bob, std::vector<std::size_t> forwarded_vars)
    : g1(std::move(alice)), g2(std::move(bob)), forwarded(std::move(forwarded_vars)) {
    if (!(g1.modulus() == g2.modulus())) {
        throw InputError("decomposition halves must share one modulus");
    }
    if (forwarded.size() > g2.variables()) {
        throw InputError("more forwarded variables than Bob's polynomial has inputs");
    }
    std::set<std::size_t> seen;
    for (auto i : forwarded) {
        if (i >= g1.variables()) {
            throw InputError("forwarded index " + std::to_string(i) + " is not one of Alice's variables");
        }
        if (!seen.insert(i).second) {
            throw InputError("forwarded indices must be distinct");
        }
    }
}

Bits Decomposition::bob_input(BitsView sigma, BitsView gamma) const {
    if (sigma.size() != alice_arity() || gamma.size() != bob_arity()) {
        throw InputError(
            "input split mismatch: expected " + std::to_string(alice_arity()) + "+" + std::to_string(bob_arity()) +
            " bits, got " + std::to_string(sigma.size()) + "+" + std::to_string(gamma.size()));
    }
    Bits in(gamma.begin(), gamma.end());
    for (auto i : forwarded) {
        in.push_back(sigma[i]);
    }
    return in;
}

LinearPolynomial Decomposition::joint() const {
    std::size_t n1 = alice_arity();
    std::size_t n2 = bob_arity();
    std::vector<Natural> coeffs(n1 + n2);
    for (std::size_t i = 0; i < n1; i++) {
        coeffs[i] = g1.coeffs()[i];
    }
    for (std::size_t j = 0; j < n2; j++) {
        coeffs[n1 + j] = g2.coeffs()[j];
    }
    for (std::size_t t = 0; t < forwarded.size(); t++) {
        coeffs[forwarded[t]] += g2.coeffs()[n2 + t];
    }
    return LinearPolynomial(g1.modulus(), g1.constant() + g2.constant(), std::move(coeffs));
}

Decomposition decompose(const LinearPolynomial &g, std::size_t n1, std::vector<std::size_t> forwarded) {
    if (n1 > g.variables()) {
        throw InputError("split point beyond the polynomial's variables");
    }
    std::vector<Natural> alice(g.coeffs().begin(), g.coeffs().begin() + static_cast<std::ptrdiff_t>(n1));
    std::vector<Natural> bob(g.coeffs().begin() + static_cast<std::ptrdiff_t>(n1), g.coeffs().end());
    for (auto i : forwarded) {
        if (i >= n1) {
            throw InputError("forwarded index " + std::to_string(i) + " is not one of Alice's variables");
        }
        bob.push_back(alice[i]);
        alice[i] = 0;
    }
    return Decomposition(
        LinearPolynomial(g.modulus(), g.constant(), std::move(alice)),
        LinearPolynomial(g.modulus(), 0, std::move(bob)),
        std::move(forwarded));
}

Decomposition forward_everything(const LinearPolynomial &g, std::size_t n1) {
    std::vector<std::size_t> all(n1);
    for (std::size_t i = 0; i < n1; i++) {
        all[i] = i;
    }
    Decomposition d = decompose(g, n1, all);
    // Move the constant to Bob as well so that g1 is identically zero.
    return Decomposition(
        LinearPolynomial::zero(g.modulus(), n1),
        LinearPolynomial(g.modulus(), g.constant(), d.g2.coeffs()),
        std::move(d.forwarded));
}

namespace {

// Polynomial compiled for enumeration. Values stay below 2^63, so a sum of
// two residues never wraps.
struct FastPoly {
    bool small = false;
    std::uint64_t m = 0;
    std::uint64_t constant = 0;
    std::vector<std::uint64_t> coeffs;
    const LinearPolynomial *source = nullptr;

    explicit FastPoly(const LinearPolynomial &p) : source(&p) {
        static const Natural limit = Natural(1) << 63;
        if (p.modulus().value() <= limit) {
            small = true;
            m = static_cast<std::uint64_t>(p.modulus().value());
            constant = static_cast<std::uint64_t>(p.constant());
            for (const auto &c : p.coeffs()) {
                coeffs.push_back(static_cast<std::uint64_t>(c));
            }
        }
    }

    bool is_zero(BitsView in) const {
        if (!small) {
            return eval_poly(*source, in) == 0;
        }
        std::uint64_t acc = constant;
        for (std::size_t i = 0; i < in.size(); i++) {
            if (in[i]) {
                acc += coeffs[i];
                if (acc >= m) {
                    acc -= m;
                }
            }
        }
        return acc == 0;
    }
};

constexpr std::uint64_t kNoViolation = std::numeric_limits<std::uint64_t>::max();

}  // namespace

CharacteristicVerdict verify_characteristic(const Characteristic &c, unsigned threads) {
    std::size_t n = c.target.arity();
    if (n > kEnumerationGuard) {
        throw GuardError(
            "refusing to enumerate 2^" + std::to_string(n) + " assignments (guard is n <= " +
            std::to_string(kEnumerationGuard) + ")");
    }
    std::vector<FastPoly> polys;
    for (const auto &p : c.polynomials) {
        polys.emplace_back(p);
    }
    std::uint64_t total = std::uint64_t{1} << n;
    struct Hit {
        std::uint64_t index = kNoViolation;
        std::size_t poly = 0;
    };
    std::vector<Hit> hits(max_chunks(threads));
    parallel_chunks(total, threads, [&](std::size_t chunk, std::uint64_t begin, std::uint64_t end) {
        Bits in(n);
        for (std::uint64_t idx = begin; idx < end; idx++) {
            assignment_from_index(idx, in);
            bool value = c.target(in);
            for (std::size_t j = 0; j < polys.size(); j++) {
                if (polys[j].is_zero(in) != value) {
                    hits[chunk] = {idx, j};
                    return;
                }
            }
        }
    });
    Hit best;
    for (const auto &h : hits) {
        if (h.index < best.index) {
            best = h;
        }
    }
    CharacteristicVerdict verdict;
    if (best.index != kNoViolation) {
        verdict.valid = false;
        Bits in(n);
        assignment_from_index(best.index, in);
        verdict.counterexample = std::move(in);
        verdict.polynomial_index = best.poly;
    }
    return verdict;
}

std::optional<Bits> verify_decomposition(const Decomposition &d, const LinearPolynomial &g, unsigned threads) {
    std::size_t n1 = d.alice_arity();
    std::size_t n2 = d.bob_arity();
    std::size_t n = n1 + n2;
    if (g.variables() != n) {
        throw InputError("joint polynomial arity does not match the decomposition");
    }
    if (n > kEnumerationGuard) {
        throw GuardError("refusing to enumerate 2^" + std::to_string(n) + " joint inputs");
    }
    std::uint64_t total = std::uint64_t{1} << n;
    std::vector<std::uint64_t> first(max_chunks(threads), kNoViolation);
    parallel_chunks(total, threads, [&](std::size_t chunk, std::uint64_t begin, std::uint64_t end) {
        Bits in(n);
        for (std::uint64_t idx = begin; idx < end; idx++) {
            assignment_from_index(idx, in);
            BitsView sigma(in.data(), n1);
            BitsView gamma(in.data() + n1, n2);
            Natural split = eval_poly(d.g1, sigma) + eval_poly(d.g2, d.bob_input(sigma, gamma));
            if (g.modulus().reduce(split) != eval_poly(g, in)) {
                first[chunk] = idx;
                return;
            }
        }
    });
    std::uint64_t best = *std::min_element(first.begin(), first.end());
    if (best == kNoViolation) {
        return std::nullopt;
    }
    Bits in(n);
    assignment_from_index(best, in);
    return in;
}

TableSearchResult characteristic_from_table(
    const BooleanFunction &f, const Natural &modulus, std::uint64_t seed, std::size_t max_attempts) {
    std::size_t n = f.arity();
    if (n > kEnumerationGuard) {
        throw GuardError("truth-table search is limited to n <= " + std::to_string(kEnumerationGuard));
    }
    RingModulus ring(modulus);
    std::uint64_t total = std::uint64_t{1} << n;
    std::vector<bool> table(total);
    Bits in(n);
    for (std::uint64_t idx = 0; idx < total; idx++) {
        assignment_from_index(idx, in);
        table[idx] = f(in);
    }

    TableSearchResult result;
    for (std::size_t attempt = 0; attempt < max_attempts; attempt++) {
        result.attempts = attempt + 1;
        auto rng = seeded_engine(seed, attempt);
        std::vector<Natural> coeffs(n);
        for (auto &c : coeffs) {
            c = uniform_below(modulus, rng);
        }
        LinearPolynomial linear(ring, 0, coeffs);
        // Every 1-input must share one value t; then constant = -t.
        std::optional<Natural> target;
        std::set<Natural> zero_values;
        bool consistent = true;
        for (std::uint64_t idx = 0; idx < total && consistent; idx++) {
            assignment_from_index(idx, in);
            Natural v = eval_poly(linear, in);
            if (table[idx]) {
                if (!target) {
                    target = v;
                } else if (*target != v) {
                    consistent = false;
                }
            } else {
                zero_values.insert(std::move(v));
            }
        }
        if (!consistent) {
            continue;
        }
        Natural t;
        if (target) {
            if (zero_values.count(*target)) {
                continue;
            }
            t = *target;
        } else {
            // Constant-0 function: any value not taken on the 0-inputs.
            bool found = false;
            for (Natural cand = 0; cand < modulus; ++cand) {
                if (!zero_values.count(cand)) {
                    t = cand;
                    found = true;
                    break;
                }
            }
            if (!found) {
                continue;
            }
        }
        LinearPolynomial candidate(ring, -t, coeffs);
        Characteristic chi({candidate}, f);
        if (verify_characteristic(chi, 1).valid) {
            result.polynomial = std::move(candidate);
            return result;
        }
    }
    return result;
}

}  // namespace qhc
