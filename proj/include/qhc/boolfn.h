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

#ifndef QHC_BOOLFN_H
#define QHC_BOOLFN_H

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qhc/bits.h"
#include "qhc/natural.h"

namespace qhc {

/// Largest variable count `verify_characteristic` will enumerate.
constexpr std::size_t kEnumerationGuard = 24;

/// The ring Z_m, m >= 2.
class RingModulus {
   public:
    explicit RingModulus(Natural m);
    const Natural &value() const {
        return m_;
    }
    Natural reduce(const Natural &x) const {
        return qhc::reduce(x, m_);
    }
    bool operator==(const RingModulus &other) const = default;

   private:
    Natural m_;
};

/// constant + sum_i coeffs[i] * x_{i+1} over Z_m. Residues are always stored
/// reduced into [0, m); negative inputs are mapped to their canonical residue.
class LinearPolynomial {
   public:
    LinearPolynomial(RingModulus modulus, Natural constant, std::vector<Natural> coeffs);
    /// The zero polynomial in `variables` variables.
    static LinearPolynomial zero(RingModulus modulus, std::size_t variables);

    const RingModulus &modulus() const {
        return modulus_;
    }
    const Natural &constant() const {
        return constant_;
    }
    const std::vector<Natural> &coeffs() const {
        return coeffs_;
    }
    std::size_t variables() const {
        return coeffs_.size();
    }

    /// Reduces every stored residue again; a no-op on any constructed value.
    LinearPolynomial rereduced() const;

    bool operator==(const LinearPolynomial &other) const = default;

   private:
    RingModulus modulus_;
    Natural constant_;
    std::vector<Natural> coeffs_;
};

/// (constant + sum coeff_i * sigma_i) mod m. Throws InputError on a length
/// mismatch or a non-0/1 entry.
Natural eval_poly(const LinearPolynomial &p, BitsView assignment);

/// A total function {0,1}^n -> {0,1}.
class BooleanFunction {
   public:
    using Rule = std::function<bool(BitsView)>;

    BooleanFunction(std::string name, std::size_t arity, Rule rule);
    /// Truth table indexed in lexicographic assignment order (see bits.h).
    static BooleanFunction from_table(std::string name, std::size_t arity, std::vector<bool> table);

    const std::string &name() const {
        return name_;
    }
    std::size_t arity() const {
        return arity_;
    }
    bool operator()(BitsView input) const;

   private:
    std::string name_;
    std::size_t arity_;
    Rule rule_;
};

/// A nonempty set of polynomials over one modulus, each vanishing exactly on
/// the target's 1-inputs.
struct Characteristic {
    std::vector<LinearPolynomial> polynomials;
    BooleanFunction target;

    Characteristic(std::vector<LinearPolynomial> polys, BooleanFunction f);
    const RingModulus &modulus() const {
        return polynomials.front().modulus();
    }
};

/// g = g1(x_1..x_{n1}) + g2(y_1..y_{n2}, x_{i_1}..x_{i_k}).
/// g1 has n1 coefficients; g2 has n2 + k coefficients, Bob's variables first
/// and then the forwarded Alice variables in `forwarded` order. `forwarded`
/// holds distinct 0-based indices into Alice's variables.
struct Decomposition {
    LinearPolynomial g1;
    LinearPolynomial g2;
    std::vector<std::size_t> forwarded;

    Decomposition(LinearPolynomial alice, LinearPolynomial bob, std::vector<std::size_t> forwarded_vars = {});

    std::size_t alice_arity() const {
        return g1.variables();
    }
    std::size_t bob_arity() const {
        return g2.variables() - forwarded.size();
    }
    /// Bob's polynomial input: gamma followed by the forwarded bits of sigma.
    Bits bob_input(BitsView sigma, BitsView gamma) const;
    /// The joint polynomial on (sigma, gamma).
    LinearPolynomial joint() const;

    bool operator==(const Decomposition &other) const = default;
};

/// Splits a joint polynomial at `n1` with the given forwarded variables.
/// Forwarded variables contribute through g2; the constant stays with g1.
Decomposition decompose(const LinearPolynomial &g, std::size_t n1, std::vector<std::size_t> forwarded = {});

/// The always-available decomposition k = n1, g1 = 0, g2 = g.
Decomposition forward_everything(const LinearPolynomial &g, std::size_t n1);

struct CharacteristicVerdict {
    bool valid = true;
    /// Lexicographically smallest violating assignment, when invalid.
    std::optional<Bits> counterexample;
    /// Index of the offending polynomial in the characteristic.
    std::size_t polynomial_index = 0;
};

/// Exhaustive check of every polynomial against the target over all 2^n
/// inputs. Throws GuardError when n > kEnumerationGuard.
CharacteristicVerdict verify_characteristic(const Characteristic &c, unsigned threads = 0);

/// Checks eval(g1, sigma) + eval(g2, gamma ++ fwd) == eval(g, sigma gamma).
/// Returns the first mismatching joint input, if any.
std::optional<Bits> verify_decomposition(
    const Decomposition &d, const LinearPolynomial &g, unsigned threads = 0);

enum class BuiltinKind { EQ, MOD, MODBIN, PALINDROME, PERM };

/// Builtin parameters. `n` is the per-side length for EQ, the input length
/// for MOD/MODBIN/PALINDROME and the matrix dimension for PERM. `m` is the
/// modulus of MOD/MODBIN. `cut` overrides the Alice/Bob split for the
/// plain-sum functions. `variables`, when set for PERM, must be n^2.
struct BuiltinParams {
    std::size_t n = 0;
    std::uint64_t m = 0;
    std::optional<std::size_t> cut;
    std::optional<std::size_t> variables;
};

std::optional<BuiltinKind> builtin_kind_from_name(const std::string &name);
std::string builtin_name(BuiltinKind kind);

/// A function with its characteristic and one decomposition per polynomial.
struct FunctionInstance {
    BooleanFunction function;
    Characteristic characteristic;
    std::vector<Decomposition> pairs;
    std::size_t n1;
    std::size_t n2;
};

/// Builds one of the five example functions with its characteristic
/// polynomial and natural split. Throws InputError on bad parameters.
FunctionInstance builtin(BuiltinKind kind, const BuiltinParams &params);
FunctionInstance builtin(const std::string &name, const BuiltinParams &params);

/// l = 2 characteristic for left(block 1) AND right(block 2), where the two
/// single-polynomial instances have coprime moduli m1, m2. The result lives
/// over Z_{m1 m2}; Alice holds block 1 and Bob holds block 2.
FunctionInstance conjunction(const FunctionInstance &left, const FunctionInstance &right);

/// Re-splits an instance at a new cut / forwarded set.
FunctionInstance resplit(const FunctionInstance &instance, std::size_t n1, std::vector<std::size_t> forwarded = {});

struct TableSearchResult {
    std::optional<LinearPolynomial> polynomial;
    std::size_t attempts = 0;
};

/// Randomized search for a linear characteristic polynomial of a
/// truth-table function over Z_modulus. A linear one need not exist, in
/// which case the search reports failure.
TableSearchResult characteristic_from_table(
    const BooleanFunction &f, const Natural &modulus, std::uint64_t seed, std::size_t max_attempts);

}  // namespace qhc

#endif
