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

#include "qhc/serialize.h"

#include <charconv>
#include <sstream>

#include "qhc/error.h"

namespace qhc {

namespace {

const Json &require(const Json &j, const char *key, const std::string &where) {
    if (!j.is_object() || !j.contains(key)) {
        throw InputError(where + ": missing field '" + key + "'");
    }
    return j.at(key);
}

Natural decimal_field(const Json &j, const std::string &where) {
    if (!j.is_string()) {
        throw InputError(where + ": expected a decimal string");
    }
    return parse_decimal(j.get<std::string>());
}

std::vector<Natural> decimal_list(const Json &j, const std::string &where) {
    if (!j.is_array()) {
        throw InputError(where + ": expected an array of decimal strings");
    }
    std::vector<Natural> out;
    for (std::size_t i = 0; i < j.size(); i++) {
        out.push_back(decimal_field(j[i], where + "[" + std::to_string(i) + "]"));
    }
    return out;
}

Json decimal_array(const std::vector<Natural> &values) {
    Json out = Json::array();
    for (const auto &v : values) {
        out.push_back(to_decimal(v));
    }
    return out;
}

}  // namespace

std::string format_double(double x) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

Json polynomial_to_json(const LinearPolynomial &p) {
    Json j;
    j["modulus"] = to_decimal(p.modulus().value());
    j["constant"] = to_decimal(p.constant());
    j["coeffs"] = decimal_array(p.coeffs());
    return j;
}

LinearPolynomial polynomial_from_json(const Json &j) {
    const std::string where = "polynomial";
    Natural m = decimal_field(require(j, "modulus", where), where + ".modulus");
    Natural c = decimal_field(require(j, "constant", where), where + ".constant");
    auto coeffs = decimal_list(require(j, "coeffs", where), where + ".coeffs");
    return LinearPolynomial(RingModulus(m), c, std::move(coeffs));
}

Json polynomials_to_json(const std::vector<LinearPolynomial> &polys) {
    Json arr = Json::array();
    for (const auto &p : polys) {
        arr.push_back(polynomial_to_json(p));
    }
    Json j;
    j["polynomials"] = std::move(arr);
    return j;
}

std::vector<LinearPolynomial> polynomials_from_json(const Json &j) {
    if (j.is_object() && j.contains("polynomials")) {
        const Json &arr = j.at("polynomials");
        if (!arr.is_array() || arr.empty()) {
            throw InputError("polynomials: expected a nonempty array");
        }
        std::vector<LinearPolynomial> out;
        for (const auto &p : arr) {
            out.push_back(polynomial_from_json(p));
        }
        return out;
    }
    return {polynomial_from_json(j)};
}

std::string certification_mode_name(CertificationMode mode) {
    switch (mode) {
        case CertificationMode::exact:
            return "exact";
        case CertificationMode::monte_carlo:
            return "monte-carlo";
        case CertificationMode::none:
            break;
    }
    return "none";
}

Json keyset_to_json(const KeySet &k) {
    Json j;
    j["N"] = to_decimal(k.modulus());
    j["keys"] = decimal_array(k.keys());
    if (k.certified_delta()) {
        j["delta"] = *k.certified_delta();
    } else {
        j["delta"] = nullptr;
    }
    Json cert;
    cert["mode"] = certification_mode_name(k.certification().mode);
    if (k.certification().mode == CertificationMode::monte_carlo) {
        cert["trials"] = k.certification().trials;
        cert["confidence"] = k.certification().confidence;
        cert["bad_fraction_bound"] = k.certification().bad_fraction_bound;
    }
    j["certification"] = std::move(cert);
    if (k.max_bias()) {
        j["max_bias"] = *k.max_bias();
    }
    return j;
}

KeySet keyset_from_json(const Json &j) {
    const std::string where = "key set";
    Natural n = decimal_field(require(j, "N", where), where + ".N");
    KeySet keys(n, decimal_list(require(j, "keys", where), where + ".keys"));
    if (!j.contains("certification")) {
        return keys;
    }
    const Json &cert = j.at("certification");
    std::string mode = require(cert, "mode", where + ".certification").get<std::string>();
    if (mode == "none") {
        return keys;
    }
    const Json &delta = require(j, "delta", where);
    if (!delta.is_number()) {
        throw InputError(where + ": a certified key set needs a numeric delta");
    }
    double max_bias = j.contains("max_bias") ? j.at("max_bias").get<double>() : delta.get<double>();
    Certification how;
    if (mode == "exact") {
        how.mode = CertificationMode::exact;
    } else if (mode == "monte-carlo") {
        how.mode = CertificationMode::monte_carlo;
        how.trials = require(cert, "trials", where + ".certification").get<std::uint64_t>();
        how.confidence = require(cert, "confidence", where + ".certification").get<double>();
        how.bad_fraction_bound = cert.value("bad_fraction_bound", 0.0);
    } else {
        throw InputError(where + ": unknown certification mode '" + mode + "'");
    }
    return keys.certified(how, delta.get<double>(), max_bias);
}

Json keysets_to_json(const std::vector<KeySet> &sets) {
    Json arr = Json::array();
    for (const auto &k : sets) {
        arr.push_back(keyset_to_json(k));
    }
    Json j;
    j["key_sets"] = std::move(arr);
    return j;
}

std::vector<KeySet> keysets_from_json(const Json &j) {
    if (j.is_object() && j.contains("key_sets")) {
        std::vector<KeySet> out;
        for (const auto &k : j.at("key_sets")) {
            out.push_back(keyset_from_json(k));
        }
        if (out.empty()) {
            throw InputError("key_sets: expected a nonempty array");
        }
        return out;
    }
    return {keyset_from_json(j)};
}

Json spec_to_json(const ProtocolSpec &spec) {
    Json j;
    j["function"] = spec.function().name();
    j["modulus"] = to_decimal(spec.modulus().value());
    j["n1"] = spec.n1();
    j["n2"] = spec.n2();
    j["forwarded"] = spec.forwarded();
    j["pairs"] = spec.pairs().size();
    j["topology"] = topology_name(spec.topology());
    Json keys = Json::array();
    for (const auto &k : spec.key_sets()) {
        Json s;
        s["N"] = to_decimal(k.modulus());
        s["d"] = k.size();
        s["delta"] = k.certified_delta() ? Json(*k.certified_delta()) : Json(nullptr);
        s["certification"] = certification_mode_name(k.certification().mode);
        keys.push_back(std::move(s));
    }
    j["key_sets"] = std::move(keys);
    j["bounds"] = spec.bounds_certified() ? "certified" : "unproven";
    return j;
}

Json cost_to_json(const CommCost &cost) {
    Json j;
    j["topology"] = topology_name(cost.topology);
    if (cost.topology == Topology::one_way) {
        j["alice_to_bob"] = cost.alice_to_bob;
    } else {
        j["alice_to_referee"] = cost.alice_to_referee;
        j["bob_to_referee"] = cost.bob_to_referee;
    }
    j["hash_qubits"] = cost.alice_hash_qubits;
    j["forwarded_bits"] = cost.forwarded_bits;
    j["total"] = cost.total;
    j["classical_baseline"] = cost.classical_baseline;
    return j;
}

Json run_report_to_json(const RunReport &report, const ProtocolSpec &spec) {
    Json j;
    j["spec"] = spec_to_json(spec);
    j["input"] = {{"alice", format_bits(report.sigma)}, {"bob", format_bits(report.gamma)}};
    j["f"] = report.f_value ? 1 : 0;
    j["exact_accept"] = report.exact_accept;
    j["fidelities"] = report.fidelities();
    j["qubits"] = cost_to_json(report.cost);
    Json values = Json::array();
    for (const auto &p : report.pairs) {
        values.push_back({{"alice", to_decimal(p.alice_value)}, {"bob", to_decimal(p.bob_value)}});
    }
    j["hashed_values"] = std::move(values);
    if (report.sampled) {
        j["sampled"] = {{"output", *report.sampled ? 1 : 0}, {"seed", *report.seed}};
    }
    j["bounds"] = report.bounds_certified ? "certified" : "unproven";
    return j;
}

Json profile_summary_to_json(const ErrorProfile &profile) {
    Json j;
    j["function"] = profile.function_id;
    j["n1"] = profile.n1;
    j["n2"] = profile.n2;
    j["inputs"] = {{"f1", profile.one_inputs}, {"f0", profile.zero_inputs}};
    j["one_sided_violations"] = profile.one_sided_violations;
    j["min_accept_on_f1"] = profile.min_accept_on_ones;
    j["worst_false_accept"] = profile.worst_false_accept;
    if (profile.worst_sigma) {
        j["worst_input"] = {{"alice", format_bits(*profile.worst_sigma)}, {"bob", format_bits(*profile.worst_gamma)}};
    } else {
        j["worst_input"] = nullptr;
    }
    j["histogram"] = profile.histogram;
    if (profile.bound) {
        j["bound"] = {
            {"value", *profile.bound},
            {"status", profile.bound_certified ? "certified" : "unproven"},
            {"holds", profile.within_bound()},
            {"secondary_bound", *profile.secondary_bound}};
    } else {
        j["bound"] = nullptr;
    }
    return j;
}

std::string profile_to_csv(const ErrorProfile &profile) {
    std::ostringstream out;
    out << "sigma,gamma,f,exact_accept\n";
    Bits sigma(profile.n1);
    Bits gamma(profile.n2);
    for (const auto &row : profile.rows) {
        assignment_from_index(row.sigma_index, sigma);
        assignment_from_index(row.gamma_index, gamma);
        out << format_bits(sigma) << ',' << format_bits(gamma) << ',' << (row.f ? 1 : 0) << ','
            << format_double(row.exact_accept) << '\n';
    }
    return out.str();
}

}  // namespace qhc
