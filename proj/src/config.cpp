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

#include "qhc/config.h"

#include <filesystem>
#include <fstream>
#include <set>

#include "qhc/error.h"

namespace qhc {

std::string run_mode_name(RunMode mode) {
    switch (mode) {
        case RunMode::sampled:
            return "sampled";
        case RunMode::profile:
            return "profile";
        case RunMode::exact:
            break;
    }
    return "exact";
}

namespace {

void reject_unknown(const Json &obj, const std::string &path, std::initializer_list<const char *> allowed) {
    std::set<std::string> ok(allowed.begin(), allowed.end());
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        if (!ok.count(it.key())) {
            throw ConfigError(path + "/" + it.key(), "unknown field");
        }
    }
}

void require_object(const Json &j, const std::string &path) {
    if (!j.is_object()) {
        throw ConfigError(path, "expected an object");
    }
}

std::uint64_t get_count(const Json &j, const std::string &path) {
    if (!j.is_number_integer() || j.get<std::int64_t>() < 0) {
        throw ConfigError(path, "expected a non-negative integer");
    }
    return j.get<std::uint64_t>();
}

std::string get_string(const Json &j, const std::string &path) {
    if (!j.is_string()) {
        throw ConfigError(path, "expected a string");
    }
    return j.get<std::string>();
}

bool uses_modulus_param(const std::string &name) {
    return name == "MOD" || name == "MODBIN";
}

FunctionDescriptor parse_descriptor(const Json &j, const std::string &path) {
    require_object(j, path);
    if (!j.contains("name")) {
        throw ConfigError(path + "/name", "missing function name");
    }
    FunctionDescriptor d;
    d.name = get_string(j.at("name"), path + "/name");
    if (d.name == "CONJ") {
        reject_unknown(j, path, {"name", "parts"});
        if (!j.contains("parts") || !j.at("parts").is_array() || j.at("parts").size() != 2) {
            throw ConfigError(path + "/parts", "CONJ needs exactly two parts");
        }
        for (std::size_t i = 0; i < 2; i++) {
            d.parts.push_back(parse_descriptor(j.at("parts")[i], path + "/parts/" + std::to_string(i)));
        }
        return d;
    }
    if (d.name == "INLINE") {
        reject_unknown(j, path, {"name", "polynomials"});
        if (!j.contains("polynomials")) {
            throw ConfigError(path + "/polynomials", "INLINE needs polynomials");
        }
        try {
            Json wrapped;
            wrapped["polynomials"] = j.at("polynomials");
            d.polynomials = polynomials_from_json(wrapped);
        } catch (const InputError &e) {
            throw ConfigError(path + "/polynomials", e.what());
        }
        return d;
    }
    if (!builtin_kind_from_name(d.name)) {
        throw ConfigError(path + "/name", "unknown builtin '" + d.name + "'");
    }
    reject_unknown(j, path, {"name", "n", "m"});
    if (!j.contains("n")) {
        throw ConfigError(path + "/n", "missing size parameter n");
    }
    d.n = get_count(j.at("n"), path + "/n");
    if (uses_modulus_param(d.name)) {
        if (!j.contains("m")) {
            throw ConfigError(path + "/m", d.name + " needs a modulus m");
        }
        d.m = get_count(j.at("m"), path + "/m");
    } else if (j.contains("m")) {
        throw ConfigError(path + "/m", d.name + " takes no modulus parameter");
    }
    return d;
}

Json descriptor_to_json(const FunctionDescriptor &d) {
    Json j;
    j["name"] = d.name;
    if (d.name == "CONJ") {
        Json parts = Json::array();
        for (const auto &p : d.parts) {
            parts.push_back(descriptor_to_json(p));
        }
        j["parts"] = std::move(parts);
    } else if (d.name == "INLINE") {
        j["polynomials"] = polynomials_to_json(d.polynomials).at("polynomials");
    } else {
        j["n"] = d.n;
        if (uses_modulus_param(d.name)) {
            j["m"] = d.m;
        }
    }
    return j;
}

}  // namespace

std::size_t descriptor_arity(const FunctionDescriptor &d) {
    if (d.name == "CONJ") {
        return descriptor_arity(d.parts.at(0)) + descriptor_arity(d.parts.at(1));
    }
    if (d.name == "INLINE") {
        return d.polynomials.at(0).variables();
    }
    if (d.name == "EQ") {
        return 2 * d.n;
    }
    if (d.name == "PERM") {
        return d.n * d.n;
    }
    return d.n;
}

namespace {

FunctionInstance build_unsplit(const FunctionDescriptor &d) {
    if (d.name == "CONJ") {
        return conjunction(build_unsplit(d.parts.at(0)), build_unsplit(d.parts.at(1)));
    }
    if (d.name == "INLINE") {
        const auto &polys = d.polynomials;
        LinearPolynomial first = polys.at(0);
        std::size_t n = first.variables();
        BooleanFunction f("INLINE", n, [first](BitsView in) { return eval_poly(first, in) == 0; });
        Characteristic chi(polys, f);
        std::vector<Decomposition> pairs;
        for (const auto &p : polys) {
            pairs.push_back(decompose(p, n / 2));
        }
        return FunctionInstance{f, std::move(chi), std::move(pairs), n / 2, n - n / 2};
    }
    BuiltinParams params;
    params.n = d.n;
    params.m = d.m;
    return builtin(d.name, params);
}

}  // namespace

FunctionInstance build_instance(const FunctionDescriptor &d, const SplitConfig &split) {
    FunctionInstance base = build_unsplit(d);
    std::size_t arity = base.function.arity();
    std::size_t n1 = split.n1.value_or(split.n2 ? arity - std::min(arity, *split.n2) : base.n1);
    std::size_t n2 = split.n2.value_or(arity - std::min(arity, n1));
    if (n1 + n2 != arity) {
        throw InputError(
            "arity mismatch: n1 + n2 = " + std::to_string(n1 + n2) + " but " + base.function.name() + " has " +
            std::to_string(arity) + " variables");
    }
    if (n1 == base.n1 && split.forwarded.empty()) {
        return base;
    }
    return resplit(base, n1, split.forwarded);
}

ExperimentConfig parse_config(const Json &document, const std::string &base_dir) {
    require_object(document, "");
    reject_unknown(
        document, "",
        {"function", "split", "delta", "keys", "mode", "trials", "seed", "topology", "inputs", "output"});
    ExperimentConfig c;
    if (!document.contains("function")) {
        throw ConfigError("/function", "missing function descriptor");
    }
    c.function = parse_descriptor(document.at("function"), "/function");

    if (document.contains("split")) {
        const Json &s = document.at("split");
        require_object(s, "/split");
        reject_unknown(s, "/split", {"n1", "n2", "forwarded"});
        if (s.contains("n1")) {
            c.split.n1 = get_count(s.at("n1"), "/split/n1");
        }
        if (s.contains("n2")) {
            c.split.n2 = get_count(s.at("n2"), "/split/n2");
        }
        if (s.contains("forwarded")) {
            const Json &f = s.at("forwarded");
            if (!f.is_array()) {
                throw ConfigError("/split/forwarded", "expected an array of variable indices");
            }
            for (std::size_t i = 0; i < f.size(); i++) {
                c.split.forwarded.push_back(get_count(f[i], "/split/forwarded/" + std::to_string(i)));
            }
        }
    }

    if (!document.contains("delta") || !document.at("delta").is_number()) {
        throw ConfigError("/delta", "missing numeric delta");
    }
    c.delta = document.at("delta").get<double>();
    if (!(c.delta > 0.0 && c.delta < 1.0)) {
        throw ConfigError("/delta", "delta out of (0,1)");
    }

    if (document.contains("keys")) {
        const Json &k = document.at("keys");
        require_object(k, "/keys");
        reject_unknown(k, "/keys", {"source", "seed", "attempts", "log2_n", "key_count", "sampled_trials", "path"});
        std::string source = k.contains("source") ? get_string(k.at("source"), "/keys/source") : "search";
        if (source == "search") {
            c.keys.kind = KeySourceKind::search;
            if (k.contains("path")) {
                throw ConfigError("/keys/path", "a searched key set takes no path");
            }
        } else if (source == "file") {
            c.keys.kind = KeySourceKind::file;
            if (!k.contains("path")) {
                throw ConfigError("/keys/path", "missing key-set file path");
            }
            std::filesystem::path p = get_string(k.at("path"), "/keys/path");
            if (p.is_relative() && !base_dir.empty()) {
                p = std::filesystem::path(base_dir) / p;
            }
            if (!std::filesystem::exists(p)) {
                throw ConfigError("/keys/path", "key-set file not found: " + p.string());
            }
            c.keys.path = p.string();
        } else {
            throw ConfigError("/keys/source", "unknown key source '" + source + "'");
        }
        if (k.contains("seed")) {
            c.keys.seed = get_count(k.at("seed"), "/keys/seed");
        }
        if (k.contains("attempts")) {
            c.keys.attempts = get_count(k.at("attempts"), "/keys/attempts");
            if (c.keys.attempts == 0) {
                throw ConfigError("/keys/attempts", "need at least one attempt");
            }
        }
        if (k.contains("log2_n")) {
            std::uint64_t l = get_count(k.at("log2_n"), "/keys/log2_n");
            if (l < 1 || l > 4096) {
                throw ConfigError("/keys/log2_n", "log2_n must be in [1, 4096]");
            }
            c.keys.log2_n = static_cast<unsigned>(l);
        }
        if (k.contains("key_count")) {
            c.keys.key_count = get_count(k.at("key_count"), "/keys/key_count");
            if (*c.keys.key_count == 0) {
                throw ConfigError("/keys/key_count", "key_count must be positive");
            }
        }
        if (k.contains("sampled_trials")) {
            c.keys.sampled_trials = get_count(k.at("sampled_trials"), "/keys/sampled_trials");
        }
    }

    if (document.contains("mode")) {
        std::string mode = get_string(document.at("mode"), "/mode");
        if (mode == "exact") {
            c.mode = RunMode::exact;
        } else if (mode == "sampled") {
            c.mode = RunMode::sampled;
        } else if (mode == "profile") {
            c.mode = RunMode::profile;
        } else {
            throw ConfigError("/mode", "unknown mode '" + mode + "' (exact, sampled, profile)");
        }
    }
    if (document.contains("trials")) {
        c.trials = get_count(document.at("trials"), "/trials");
    }
    if (c.mode == RunMode::sampled && c.trials == 0) {
        throw ConfigError("/trials", "sampled mode needs trials >= 1");
    }
    if (document.contains("seed")) {
        c.seed = get_count(document.at("seed"), "/seed");
    }
    if (document.contains("topology")) {
        std::string t = get_string(document.at("topology"), "/topology");
        auto topo = topology_from_name(t);
        if (!topo) {
            throw ConfigError("/topology", "unknown topology '" + t + "' (one-way, smp)");
        }
        c.topology = *topo;
    }
    if (document.contains("output")) {
        c.output = get_string(document.at("output"), "/output");
    }

    // Building the instance validates parameters, the split and the arity.
    FunctionInstance instance = [&] {
        try {
            (void)descriptor_arity(c.function);
            return build_instance(c.function, c.split);
        } catch (const ConfigError &) {
            throw;
        } catch (const InputError &e) {
            std::string what = e.what();
            throw ConfigError(what.rfind("arity mismatch", 0) == 0 ? "/split" : "/function", what);
        }
    }();
    if (c.topology == Topology::smp && !c.split.forwarded.empty()) {
        throw ConfigError("/split/forwarded", "SMP protocols cannot forward Alice's variables (k must be 0)");
    }

    if (document.contains("inputs")) {
        const Json &arr = document.at("inputs");
        if (!arr.is_array()) {
            throw ConfigError("/inputs", "expected an array of {alice, bob} bit strings");
        }
        for (std::size_t i = 0; i < arr.size(); i++) {
            std::string path = "/inputs/" + std::to_string(i);
            require_object(arr[i], path);
            reject_unknown(arr[i], path, {"alice", "bob"});
            if (!arr[i].contains("alice") || !arr[i].contains("bob")) {
                throw ConfigError(path, "each input needs 'alice' and 'bob'");
            }
            InputPair in{get_string(arr[i].at("alice"), path + "/alice"), get_string(arr[i].at("bob"), path + "/bob")};
            try {
                parse_bits(in.alice);
                parse_bits(in.bob);
            } catch (const InputError &e) {
                throw ConfigError(path, e.what());
            }
            if (in.alice.size() != instance.n1 || in.bob.size() != instance.n2) {
                throw ConfigError(
                    path, "input lengths " + std::to_string(in.alice.size()) + "+" + std::to_string(in.bob.size()) +
                              " do not match the split " + std::to_string(instance.n1) + "+" +
                              std::to_string(instance.n2));
            }
            c.inputs.push_back(std::move(in));
        }
    }
    return c;
}

Json serialize_config(const ExperimentConfig &c) {
    Json j;
    j["function"] = descriptor_to_json(c.function);
    Json split = Json::object();
    if (c.split.n1) {
        split["n1"] = *c.split.n1;
    }
    if (c.split.n2) {
        split["n2"] = *c.split.n2;
    }
    split["forwarded"] = c.split.forwarded;
    j["split"] = std::move(split);
    j["delta"] = c.delta;
    Json keys;
    if (c.keys.kind == KeySourceKind::file) {
        keys["source"] = "file";
        keys["path"] = c.keys.path;
    } else {
        keys["source"] = "search";
    }
    keys["seed"] = c.keys.seed;
    keys["attempts"] = c.keys.attempts;
    if (c.keys.log2_n) {
        keys["log2_n"] = *c.keys.log2_n;
    }
    if (c.keys.key_count) {
        keys["key_count"] = *c.keys.key_count;
    }
    keys["sampled_trials"] = c.keys.sampled_trials;
    j["keys"] = std::move(keys);
    j["mode"] = run_mode_name(c.mode);
    j["trials"] = c.trials;
    j["seed"] = c.seed;
    j["topology"] = topology_name(c.topology);
    Json inputs = Json::array();
    for (const auto &in : c.inputs) {
        inputs.push_back({{"alice", in.alice}, {"bob", in.bob}});
    }
    j["inputs"] = std::move(inputs);
    j["output"] = c.output;
    return j;
}

ProtocolSpec prepare_spec(const ExperimentConfig &config, unsigned threads) {
    FunctionInstance instance = build_instance(config.function, config.split);
    std::size_t pairs = instance.pairs.size();
    const Natural &ring = instance.pairs.front().g1.modulus().value();
    std::vector<KeySet> key_sets;
    if (config.keys.kind == KeySourceKind::file) {
        std::ifstream in(config.keys.path);
        if (!in) {
            throw ConfigError("/keys/path", "cannot open " + config.keys.path);
        }
        Json doc;
        try {
            doc = Json::parse(in);
        } catch (const Json::exception &e) {
            throw ConfigError("/keys/path", std::string("malformed key-set JSON: ") + e.what());
        }
        key_sets = keysets_from_json(doc);
        if (key_sets.size() == 1 && pairs > 1) {
            key_sets.assign(pairs, key_sets.front());
        }
        if (key_sets.size() != pairs) {
            throw ConfigError(
                "/keys/path", "file holds " + std::to_string(key_sets.size()) + " key sets, the characteristic has " +
                                  std::to_string(pairs) + " polynomials");
        }
        // Re-verify exact certificates rather than trusting the file.
        for (auto &k : key_sets) {
            if (k.certification().mode != CertificationMode::exact) {
                continue;
            }
            ResistanceVerdict v = verify_resistance(k, *k.certified_delta(), threads);
            if (v.status == ResistanceStatus::too_large) {
                // Cannot be re-checked; carried as unproven.
                k = k.uncertified();
                continue;
            }
            if (v.status != ResistanceStatus::certified) {
                throw KeySetFailure(
                    "key set claims exact certification at delta=" + format_double(*k.certified_delta()) +
                    " but the sweep finds max bias " + format_double(v.max_bias) + " at difference " +
                    to_decimal(v.worst_difference));
            }
            k = *v.annotated;
        }
    } else {
        Natural n = config.keys.log2_n ? Natural(1) << *config.keys.log2_n : ring;
        KeySearchOptions opts;
        opts.key_count = config.keys.key_count;
        opts.sampled_trials = config.keys.sampled_trials;
        opts.threads = threads;
        for (std::size_t j = 0; j < pairs; j++) {
            KeySearchResult r = search_key_set(n, config.delta, mix_seed(config.keys.seed, j), config.keys.attempts, opts);
            if (!r.key_set) {
                throw KeySetFailure(
                    "no key set with max bias below delta=" + format_double(config.delta) + " in " +
                    std::to_string(r.attempts) + " attempts (best max bias " + format_double(r.best_max_bias) + ")");
            }
            key_sets.push_back(*r.key_set);
        }
    }
    return ProtocolSpec(std::move(instance), std::move(key_sets), config.topology);
}

}  // namespace qhc
