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

// The five example functions and the synthetic two-polynomial conjunction.

#include <algorithm>

#include "qhc/boolfn.h"
#include "qhc/error.h"

namespace qhc {

namespace {

Natural two_pow(std::size_t e) {
    return Natural(1) << e;
}

FunctionInstance finish(BooleanFunction f, LinearPolynomial g, std::size_t n1) {
    std::size_t n = f.arity();
    Characteristic chi({g}, f);
    return FunctionInstance{std::move(f), std::move(chi), {decompose(g, n1)}, n1, n - n1};
}

std::size_t cut_or_half(const BuiltinParams &params, std::size_t total) {
    std::size_t cut = params.cut.value_or(total / 2);
    if (cut > total) {
        throw InputError(
            "cut " + std::to_string(cut) + " exceeds the " + std::to_string(total) + " input variables");
    }
    return cut;
}

FunctionInstance make_eq(const BuiltinParams &params) {
    std::size_t n = params.n;
    if (n < 1) {
        throw InputError("EQ needs n >= 1 bits per side");
    }
    RingModulus ring(two_pow(n));
    std::vector<Natural> coeffs(2 * n);
    for (std::size_t i = 0; i < n; i++) {
        coeffs[i] = two_pow(i);
        coeffs[n + i] = -two_pow(i);
    }
    BooleanFunction f("EQ_" + std::to_string(n), 2 * n, [n](BitsView in) {
        return std::equal(in.begin(), in.begin() + static_cast<std::ptrdiff_t>(n), in.begin() + static_cast<std::ptrdiff_t>(n));
    });
    return finish(std::move(f), LinearPolynomial(ring, 0, std::move(coeffs)), params.cut.value_or(n));
}

FunctionInstance make_mod(const BuiltinParams &params) {
    std::size_t n = params.n;
    std::uint64_t m = params.m;
    if (n < 1 || m < 2) {
        throw InputError("MOD needs n >= 1 and m >= 2");
    }
    RingModulus ring{Natural(m)};
    BooleanFunction f("MOD" + std::to_string(m) + "_" + std::to_string(n), n, [m](BitsView in) {
        std::uint64_t ones = static_cast<std::uint64_t>(std::count(in.begin(), in.end(), std::uint8_t{1}));
        return ones % m == 0;
    });
    return finish(
        std::move(f), LinearPolynomial(ring, 0, std::vector<Natural>(n, Natural(1))), cut_or_half(params, n));
}

FunctionInstance make_modbin(const BuiltinParams &params) {
    std::size_t n = params.n;
    std::uint64_t m = params.m;
    if (n < 1 || m < 2) {
        throw InputError("MODBIN needs n >= 1 and m >= 2");
    }
    RingModulus ring{Natural(m)};
    std::vector<Natural> coeffs(n);
    for (std::size_t i = 0; i < n; i++) {
        coeffs[i] = two_pow(i);
    }
    // x_1 is the least significant bit.
    BooleanFunction f("MODBIN" + std::to_string(m) + "_" + std::to_string(n), n, [m](BitsView in) {
        Natural value = 0;
        for (std::size_t i = in.size(); i-- > 0;) {
            value = (value << 1) + in[i];
        }
        return value % m == 0;
    });
    return finish(std::move(f), LinearPolynomial(ring, 0, std::move(coeffs)), cut_or_half(params, n));
}

FunctionInstance make_palindrome(const BuiltinParams &params) {
    std::size_t n = params.n;
    if (n < 2) {
        throw InputError("PALINDROME needs n >= 2 (its modulus is 2^floor(n/2))");
    }
    std::size_t lo = n / 2;
    std::size_t hi = (n + 1) / 2;
    RingModulus ring(two_pow(lo));
    std::vector<Natural> coeffs(n, Natural(0));
    for (std::size_t i = 1; i <= lo; i++) {
        coeffs[i - 1] += two_pow(i - 1);
    }
    // Second sum starts at ceil(n/2); for even n its first term is 2^(n/2) == 0.
    for (std::size_t i = hi; i <= n; i++) {
        coeffs[i - 1] -= two_pow(n - i);
    }
    BooleanFunction f("PALINDROME_" + std::to_string(n), n, [n](BitsView in) {
        for (std::size_t i = 0; i < n / 2; i++) {
            if (in[i] != in[n - 1 - i]) {
                return false;
            }
        }
        return true;
    });
    return finish(std::move(f), LinearPolynomial(ring, 0, std::move(coeffs)), params.cut.value_or(lo));
}

FunctionInstance make_perm(const BuiltinParams &params) {
    std::size_t n = params.n;
    if (params.variables) {
        std::size_t v = *params.variables;
        std::size_t root = 0;
        while ((root + 1) * (root + 1) <= v) {
            root++;
        }
        if (root * root != v) {
            throw InputError("PERM needs a square variable count, got " + std::to_string(v));
        }
        if (n == 0) {
            n = root;
        } else if (n != root) {
            throw InputError("PERM variable count " + std::to_string(v) + " does not equal n^2");
        }
    }
    if (n < 1) {
        throw InputError("PERM needs n >= 1");
    }
    Natural base = n + 1;
    RingModulus ring(pow_natural(base, static_cast<unsigned>(2 * n)));
    // x_{ij} is variable (i-1)*n + j in row-major order.
    std::vector<Natural> coeffs(n * n);
    for (std::size_t i = 1; i <= n; i++) {
        for (std::size_t j = 1; j <= n; j++) {
            coeffs[(i - 1) * n + (j - 1)] =
                pow_natural(base, static_cast<unsigned>(i - 1)) + pow_natural(base, static_cast<unsigned>(n + j - 1));
        }
    }
    Natural constant = 0;
    for (std::size_t i = 1; i <= 2 * n; i++) {
        constant -= pow_natural(base, static_cast<unsigned>(i - 1));
    }
    BooleanFunction f("PERM_" + std::to_string(n), n * n, [n](BitsView in) {
        for (std::size_t i = 0; i < n; i++) {
            std::size_t row = 0;
            std::size_t col = 0;
            for (std::size_t j = 0; j < n; j++) {
                row += in[i * n + j];
                col += in[j * n + i];
            }
            if (row != 1 || col != 1) {
                return false;
            }
        }
        return true;
    });
    return finish(
        std::move(f), LinearPolynomial(ring, constant, std::move(coeffs)), cut_or_half(params, n * n));
}

// Inverse of a modulo m for coprime a, m.
Natural inverse_mod(const Natural &a, const Natural &m) {
    Natural old_r = reduce(a, m);
    Natural r = m;
    Natural old_s = 1;
    Natural s = 0;
    while (r != 0) {
        Natural q = old_r / r;
        Natural tmp = old_r - q * r;
        old_r = r;
        r = tmp;
        tmp = old_s - q * s;
        old_s = s;
        s = tmp;
    }
    if (old_r != 1) {
        throw InputError("moduli must be coprime");
    }
    return reduce(old_s, m);
}

}  // namespace

std::optional<BuiltinKind> builtin_kind_from_name(const std::string &name) {
    if (name == "EQ") {
        return BuiltinKind::EQ;
    }
    if (name == "MOD") {
        return BuiltinKind::MOD;
    }
    if (name == "MODBIN") {
        return BuiltinKind::MODBIN;
    }
    if (name == "PALINDROME") {
        return BuiltinKind::PALINDROME;
    }
    if (name == "PERM") {
        return BuiltinKind::PERM;
    }
    return std::nullopt;
}

std::string builtin_name(BuiltinKind kind) {
    switch (kind) {
        case BuiltinKind::EQ:
            return "EQ";
        case BuiltinKind::MOD:
            return "MOD";
        case BuiltinKind::MODBIN:
            return "MODBIN";
        case BuiltinKind::PALINDROME:
            return "PALINDROME";
        case BuiltinKind::PERM:
            return "PERM";
    }
    return "?";
}

FunctionInstance builtin(BuiltinKind kind, const BuiltinParams &params) {
    switch (kind) {
        case BuiltinKind::EQ:
            return make_eq(params);
        case BuiltinKind::MOD:
            return make_mod(params);
        case BuiltinKind::MODBIN:
            return make_modbin(params);
        case BuiltinKind::PALINDROME:
            return make_palindrome(params);
        case BuiltinKind::PERM:
            return make_perm(params);
    }
    throw InputError("unknown builtin kind");
}

FunctionInstance builtin(const std::string &name, const BuiltinParams &params) {
    auto kind = builtin_kind_from_name(name);
    if (!kind) {
        throw InputError("unknown builtin function '" + name + "'");
    }
    return builtin(*kind, params);
}

FunctionInstance conjunction(const FunctionInstance &left, const FunctionInstance &right) {
    if (left.characteristic.polynomials.size() != 1 || right.characteristic.polynomials.size() != 1) {
        throw InputError("conjunction expects single-polynomial operands");
    }
    const LinearPolynomial &pa = left.characteristic.polynomials[0];
    const LinearPolynomial &pb = right.characteristic.polynomials[0];
    const Natural &m1 = pa.modulus().value();
    const Natural &m2 = pb.modulus().value();
    Natural big = m1 * m2;
    // CRT idempotents: e1 = 1 mod m1, 0 mod m2; e2 = 0 mod m1, 1 mod m2.
    Natural e1 = m2 * inverse_mod(m2, m1);
    Natural e2 = m1 * inverse_mod(m1, m2);
    // Second polynomial rescales each block by a unit so the two differ.
    Natural u = m1 - 1;
    Natural w = m1 == 2 ? m2 - 1 : Natural(1);
    struct Weights {
        Natural a;
        Natural b;
    };
    std::vector<Weights> weights = {{e1, e2}, {e1 * u, e2 * w}};

    std::size_t na = pa.variables();
    std::size_t nb = pb.variables();
    RingModulus ring(big);
    std::vector<LinearPolynomial> polys;
    for (const auto &wt : weights) {
        std::vector<Natural> coeffs;
        for (const auto &c : pa.coeffs()) {
            coeffs.push_back(wt.a * c);
        }
        for (const auto &c : pb.coeffs()) {
            coeffs.push_back(wt.b * c);
        }
        polys.emplace_back(ring, wt.a * pa.constant() + wt.b * pb.constant(), std::move(coeffs));
    }
    BooleanFunction lf = left.function;
    BooleanFunction rf = right.function;
    BooleanFunction f("CONJ(" + lf.name() + "," + rf.name() + ")", na + nb, [lf, rf, na](BitsView in) {
        return lf(in.first(na)) && rf(in.subspan(na));
    });
    std::vector<Decomposition> pairs;
    for (const auto &p : polys) {
        pairs.push_back(decompose(p, na));
    }
    Characteristic chi(polys, f);
    return FunctionInstance{std::move(f), std::move(chi), std::move(pairs), na, nb};
}

FunctionInstance resplit(const FunctionInstance &instance, std::size_t n1, std::vector<std::size_t> forwarded) {
    std::size_t n = instance.function.arity();
    if (n1 > n) {
        throw InputError("split n1=" + std::to_string(n1) + " exceeds the arity " + std::to_string(n));
    }
    std::vector<Decomposition> pairs;
    for (const auto &p : instance.characteristic.polynomials) {
        pairs.push_back(decompose(p, n1, forwarded));
    }
    return FunctionInstance{instance.function, instance.characteristic, std::move(pairs), n1, n - n1};
}

}  // namespace qhc
