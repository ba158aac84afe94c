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

#include "qhc/cli.h"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>

#include "CLI11.hpp"
#include "qhc/config.h"
#include "qhc/error.h"

namespace qhc::cli {

namespace {

using Clock = std::chrono::steady_clock;

unsigned resolve_thread_flag(std::optional<unsigned> flag) {
    if (flag) {
        return *flag;
    }
    if (const char *env = std::getenv("QHC_THREADS")) {
        try {
            return static_cast<unsigned>(std::stoul(env));
        } catch (const std::exception &) {
            throw InputError(std::string("QHC_THREADS is not a thread count: '") + env + "'");
        }
    }
    return 0;
}

Json read_json_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw InputError("cannot open " + path);
    }
    try {
        return Json::parse(in);
    } catch (const Json::exception &e) {
        throw InputError(path + ": malformed JSON: " + e.what());
    }
}

void write_text(const std::string &path, const std::string &text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw InputError("cannot write " + path);
    }
    out << text;
}

Json tool_json() {
    return {{"name", kToolName}, {"version", kToolVersion}};
}

Json timing_json(Clock::time_point start) {
    double secs = std::chrono::duration<double>(Clock::now() - start).count();
    return {{"wall_clock_seconds", secs}};
}

std::string base_dir_of(const std::string &path) {
    return std::filesystem::path(path).parent_path().string();
}

// ---- verify ----

struct VerifyArgs {
    std::string function;
    std::size_t n = 0;
    std::uint64_t m = 0;
    std::optional<std::size_t> cut;
    std::string poly;
    std::optional<unsigned> threads;
};

int cmd_verify(const VerifyArgs &a, std::ostream &out) {
    BuiltinParams params;
    params.n = a.n;
    params.m = a.m;
    params.cut = a.cut;
    FunctionInstance inst = builtin(a.function, params);
    std::vector<LinearPolynomial> polys = inst.characteristic.polynomials;
    if (!a.poly.empty()) {
        polys = polynomials_from_json(read_json_file(a.poly));
    }
    Characteristic chi(polys, inst.function);
    CharacteristicVerdict v = verify_characteristic(chi, resolve_thread_flag(a.threads));
    Json report;
    report["function"] = inst.function.name();
    report["modulus"] = to_decimal(chi.modulus().value());
    report["variables"] = inst.function.arity();
    report["assignments"] = std::uint64_t{1} << inst.function.arity();
    report["polynomials"] = chi.polynomials.size();
    report["valid"] = v.valid;
    if (!v.valid) {
        report["counterexample"] = format_bits(*v.counterexample);
        report["polynomial_index"] = v.polynomial_index;
        report["f"] = inst.function(*v.counterexample) ? 1 : 0;
        report["g"] = to_decimal(eval_poly(chi.polynomials[v.polynomial_index], *v.counterexample));
    }
    out << report.dump(2) << "\n";
    return v.valid ? kExitOk : kExitCounterexample;
}

// ---- search-keys ----

struct SearchArgs {
    unsigned log2_n = 0;
    double delta = 0;
    std::uint64_t seed = 0;
    std::size_t attempts = 10;
    std::string out;
    std::optional<std::uint64_t> key_count;
    std::uint64_t sampled_trials = 0;
    std::optional<unsigned> threads;
};

int cmd_search(const SearchArgs &a, std::ostream &out, std::ostream &err) {
    if (a.log2_n < 1 || a.log2_n > 4096) {
        throw InputError("--log2-n must be in [1, 4096]");
    }
    Natural n = Natural(1) << a.log2_n;
    KeySearchOptions opts;
    opts.key_count = a.key_count;
    opts.sampled_trials = a.sampled_trials;
    opts.threads = resolve_thread_flag(a.threads);
    KeySearchResult r = search_key_set(n, a.delta, a.seed, a.attempts, opts);
    Json summary;
    summary["N"] = to_decimal(n);
    summary["d"] = r.key_count;
    summary["attempts"] = r.attempts;
    summary["best_max_bias"] = r.best_max_bias;
    if (!r.key_set) {
        summary["certified"] = false;
        out << summary.dump(2) << "\n";
        err << "error: no key set with max bias below " << format_double(a.delta) << " in " << r.attempts
            << " attempts\n";
        return kExitCounterexample;
    }
    summary["certified"] = true;
    summary["certification"] = certification_mode_name(r.key_set->certification().mode);
    summary["hash_qubits"] = hash_qubits(*r.key_set);
    std::string doc = keyset_to_json(*r.key_set).dump(2) + "\n";
    if (a.out.empty()) {
        out << doc;
    } else {
        write_text(a.out, doc);
        out << summary.dump(2) << "\n";
    }
    return kExitOk;
}

// ---- run / profile ----

struct ExperimentArgs {
    std::string config;
    std::optional<std::uint64_t> seed;
    std::optional<double> delta;
    std::optional<std::uint64_t> trials;
    std::string mode;
    std::string topology;
    std::string out;
    std::optional<unsigned> threads;
};

ExperimentConfig load_config(const ExperimentArgs &a, bool force_profile) {
    Json doc = read_json_file(a.config);
    if (!doc.is_object()) {
        throw ConfigError("", "expected an object");
    }
    // Flags take precedence over file values.
    if (a.seed) {
        doc["seed"] = *a.seed;
    }
    if (a.delta) {
        doc["delta"] = *a.delta;
    }
    if (a.trials) {
        doc["trials"] = *a.trials;
    }
    if (!a.mode.empty()) {
        doc["mode"] = a.mode;
    }
    if (!a.topology.empty()) {
        doc["topology"] = a.topology;
    }
    if (!a.out.empty()) {
        doc["output"] = a.out;
    }
    if (force_profile) {
        doc["mode"] = "profile";
    }
    return parse_config(doc, base_dir_of(a.config));
}

Json keysets_summary(const ProtocolSpec &spec) {
    return keysets_to_json(spec.key_sets()).at("key_sets");
}

RunReport run_one(const ProtocolSpec &spec, const ExperimentConfig &cfg, const InputPair &in) {
    Bits sigma = parse_bits(in.alice);
    Bits gamma = parse_bits(in.bob);
    return cfg.topology == Topology::smp ? run_smp(spec, sigma, gamma) : run_exact(spec, sigma, gamma);
}

int emit(const ExperimentConfig &cfg, const Json &report, std::ostream &out) {
    std::string text = report.dump(2) + "\n";
    if (cfg.output.empty()) {
        out << text;
    } else {
        write_text(cfg.output, text);
    }
    return kExitOk;
}

int cmd_profile(const ExperimentConfig &cfg, unsigned threads, std::ostream &out, Clock::time_point start) {
    if (cfg.output.empty()) {
        throw InputError("profile needs an output path (--out or \"output\")");
    }
    ProtocolSpec spec = prepare_spec(cfg, threads);
    ErrorProfile profile = error_profile(spec, threads);
    write_text(cfg.output, profile_to_csv(profile));
    Json report;
    report["tool"] = tool_json();
    report["config"] = serialize_config(cfg);
    report["spec"] = spec_to_json(spec);
    report["cost"] = cost_to_json(comm_cost(spec));
    report["key_sets"] = keysets_summary(spec);
    report["profile"] = profile_summary_to_json(profile);
    report["csv"] = cfg.output;
    report["timing"] = timing_json(start);
    out << report.dump(2) << "\n";
    if (profile.one_sided_violations != 0) {
        return kExitCounterexample;
    }
    if (profile.bound && profile.bound_certified && !profile.within_bound()) {
        return kExitCounterexample;
    }
    return kExitOk;
}

int cmd_run(const ExperimentConfig &cfg, unsigned threads, std::ostream &out, Clock::time_point start) {
    if (cfg.mode == RunMode::profile) {
        return cmd_profile(cfg, threads, out, start);
    }
    if (cfg.inputs.empty()) {
        throw ConfigError("/inputs", "exact and sampled modes need at least one input");
    }
    ProtocolSpec spec = prepare_spec(cfg, threads);
    Json results = Json::array();
    bool violation = false;
    for (std::size_t i = 0; i < cfg.inputs.size(); i++) {
        RunReport r = run_one(spec, cfg, cfg.inputs[i]);
        Json t = run_report_to_json(r, spec);
        t.erase("spec");
        if (r.f_value && std::abs(r.exact_accept - 1.0) > kCertaintyTolerance) {
            violation = true;
        }
        if (cfg.mode == RunMode::sampled) {
            std::uint64_t seed = mix_seed(cfg.seed, i);
            std::uint64_t accepted = sample_acceptance(spec, r.sigma, r.gamma, seed, cfg.trials);
            double p = r.exact_accept;
            double freq = static_cast<double>(accepted) / static_cast<double>(cfg.trials);
            double band = 3.0 * std::sqrt(p * (1.0 - p) / static_cast<double>(cfg.trials));
            t["sampled_runs"] = {
                {"trials", cfg.trials},
                {"seed", seed},
                {"accepted", accepted},
                {"frequency", freq},
                {"band_3sigma", band},
                {"within_band", std::abs(freq - p) <= band}};
        }
        results.push_back(std::move(t));
    }
    Json report;
    report["tool"] = tool_json();
    report["config"] = serialize_config(cfg);
    report["spec"] = spec_to_json(spec);
    report["key_sets"] = keysets_summary(spec);
    report["results"] = std::move(results);
    report["timing"] = timing_json(start);
    emit(cfg, report, out);
    return violation ? kExitCounterexample : kExitOk;
}

}  // namespace

Json canonical_report(Json report) {
    if (report.is_object()) {
        report.erase("timing");
    }
    return report;
}

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Quantum-hashing communication protocol simulator", kToolName};
    app.require_subcommand(1);

    VerifyArgs va;
    auto *verify = app.add_subcommand("verify", "Exhaustively check a builtin's characteristic polynomial");
    verify->add_option("--function", va.function, "EQ, MOD, MODBIN, PALINDROME or PERM")->required();
    verify->add_option("--n", va.n, "Size parameter")->required();
    verify->add_option("--m", va.m, "Modulus for MOD / MODBIN");
    verify->add_option("--cut", va.cut, "Alice/Bob split point");
    verify->add_option("--poly", va.poly, "Polynomial JSON to check instead of the builtin one");
    verify->add_option("--threads", va.threads, "Worker threads (default: QHC_THREADS or all cores)");

    SearchArgs sa;
    auto *search = app.add_subcommand("search-keys", "Find and certify a delta-resistant key set");
    search->add_option("--log2-n", sa.log2_n, "Key-set modulus N = 2^log2-n")->required();
    search->add_option("--delta", sa.delta, "Bias bound in (0,1)")->required();
    search->add_option("--seed", sa.seed, "Seed");
    search->add_option("--attempts", sa.attempts, "Maximum random draws");
    search->add_option("--out", sa.out, "Output key-set JSON");
    search->add_option("--key-count", sa.key_count, "Override the planned number of keys");
    search->add_option("--sampled-trials", sa.sampled_trials, "Monte Carlo certification above N = 2^21");
    search->add_option("--threads", sa.threads, "Worker threads");

    ExperimentArgs ra;
    auto *runc = app.add_subcommand("run", "Run a configured experiment (exact or sampled)");
    runc->add_option("--config", ra.config, "Experiment config JSON")->required();
    runc->add_option("--seed", ra.seed, "Override the sampling seed");
    runc->add_option("--out", ra.out, "Report path");
    runc->add_option("--delta", ra.delta, "Override delta");
    runc->add_option("--trials", ra.trials, "Override sampled trials");
    runc->add_option("--mode", ra.mode, "exact, sampled or profile");
    runc->add_option("--topology", ra.topology, "one-way or smp");
    runc->add_option("--threads", ra.threads, "Worker threads");

    ExperimentArgs pa;
    auto *prof = app.add_subcommand("profile", "Exhaustive error profile written as CSV");
    prof->add_option("--config", pa.config, "Experiment config JSON")->required();
    prof->add_option("--out", pa.out, "CSV path");
    prof->add_option("--delta", pa.delta, "Override delta");
    prof->add_option("--topology", pa.topology, "one-way or smp");
    prof->add_option("--threads", pa.threads, "Worker threads");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitMalformed;
    }

    auto start = Clock::now();
    try {
        if (*verify) {
            return cmd_verify(va, out);
        }
        if (*search) {
            return cmd_search(sa, out, err);
        }
        if (*runc) {
            ExperimentConfig cfg = load_config(ra, false);
            return cmd_run(cfg, resolve_thread_flag(ra.threads), out, start);
        }
        if (*prof) {
            ExperimentConfig cfg = load_config(pa, true);
            return cmd_profile(cfg, resolve_thread_flag(pa.threads), out, start);
        }
    } catch (const GuardError &e) {
        err << "error: " << e.what() << "\n";
        return kExitGuard;
    } catch (const KeySetFailure &e) {
        err << "error: " << e.what() << "\n";
        return kExitCounterexample;
    } catch (const InputError &e) {
        err << "error: " << e.what() << "\n";
        return kExitMalformed;
    } catch (const Json::exception &e) {
        err << "error: " << e.what() << "\n";
        return kExitMalformed;
    }
    return kExitMalformed;
}

}  // namespace qhc::cli
