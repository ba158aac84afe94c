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

// JSON and CSV forms. Every value that may exceed 64 bits is a decimal string.

#ifndef QHC_SERIALIZE_H
#define QHC_SERIALIZE_H

#include <string>
#include <vector>

#include "json.hpp"
#include "qhc/boolfn.h"
#include "qhc/protocol.h"
#include "qhc/qhash.h"

namespace qhc {

using Json = nlohmann::ordered_json;

/// { "modulus": "...", "constant": "...", "coeffs": ["...", ...] }
Json polynomial_to_json(const LinearPolynomial &p);
LinearPolynomial polynomial_from_json(const Json &j);

/// Either a single polynomial object or { "polynomials": [ ... ] }.
Json polynomials_to_json(const std::vector<LinearPolynomial> &polys);
std::vector<LinearPolynomial> polynomials_from_json(const Json &j);

/// { "N": "...", "keys": [...], "delta": 0.3 | null, "certification": {"mode": "exact"} }
Json keyset_to_json(const KeySet &k);
KeySet keyset_from_json(const Json &j);

/// Either a single key set or { "key_sets": [ ... ] }.
Json keysets_to_json(const std::vector<KeySet> &sets);
std::vector<KeySet> keysets_from_json(const Json &j);

std::string certification_mode_name(CertificationMode mode);

Json spec_to_json(const ProtocolSpec &spec);
Json cost_to_json(const CommCost &cost);

/// Run transcript: spec, input, f, exact_accept, fidelities, qubits, plus
/// per-pair values and the sampled bit when present.
Json run_report_to_json(const RunReport &report, const ProtocolSpec &spec);

/// Summary of a profile (no per-row data).
Json profile_summary_to_json(const ErrorProfile &profile);

/// CSV with header sigma,gamma,f,exact_accept; one row per input pair in
/// lexicographic order.
std::string profile_to_csv(const ErrorProfile &profile);

/// Shortest form that round-trips the double.
std::string format_double(double x);

}  // namespace qhc

#endif
