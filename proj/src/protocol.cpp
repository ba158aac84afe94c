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

#include "qhc/protocol.h"

#include <algorithm>
#include <cmath>

#include "qhc/error.h"
#include "qhc/parallel.h"

namespace qhc {

std::string topology_name(Topology t) {
    return t == Topology::smp ? "smp" : "one-way";
}

std::optional<Topology> topology_from_name(const std::string &name) {
    if (name == "one-way") {
        return Topology::one_way;
    }
    if (name == "smp") {
        return Topology::smp;
    }
    return std::nullopt;
}

ProtocolSpec::ProtocolSpec(FunctionInstance instance, std::vector<KeySet> key_sets, Topology topology)
    : instance_(std::move(instance)), key_sets_(std::move(key_sets)), topology_(topology) {
    const auto &pairs = instance_.pairs;
    if (pairs.empty()) {
        throw InputError("a protocol needs at least one polynomial pair");
    }
    if (key_sets_.size() != pairs.size()) {
        throw InputError(
            "need one key set per polynomial pair: " + std::to_string(pairs.size()) + " pairs, " +
            std::to_string(key_sets_.size()) + " key sets");
    }
    if (instance_.function.arity() != instance_.n1 + instance_.n2) {
        throw InputError("split n1 + n2 does not match the function arity");
    }
    for (std::size_t j = 0; j < pairs.size(); j++) {
        const auto &p = pairs[j];
        if (p.alice_arity() != instance_.n1 || p.bob_arity() != instance_.n2) {
            throw InputError("decomposition " + std::to_string(j) + " does not match the split");
        }
        if (p.forwarded != pairs.front().forwarded) {
            throw InputError("all pairs must forward the same Alice variables");
        }
        if (!(p.g1.modulus() == pairs.front().g1.modulus())) {
            throw InputError("all pairs must share the characteristic's modulus");
        }
        if (key_sets_[j].modulus() < p.g1.modulus().value()) {
            throw InputError(
                "key set " + std::to_string(j) + " has modulus " + to_decimal(key_sets_[j].modulus()) +
                " below the ring modulus " + to_decimal(p.g1.modulus().value()));
        }
    }
    if (topology_ == Topology::smp && forwarded_count() != 0) {
        throw InputError("SMP protocols cannot forward Alice's variables to Bob (k must be 0)");
    }
}

bool ProtocolSpec::bounds_certified() const {
    return std::all_of(key_sets_.begin(), key_sets_.end(), [](const KeySet &k) { return k.exactly_certified(); });
}

std::optional<double> ProtocolSpec::bound_delta() const {
    double worst = 0.0;
    for (const auto &k : key_sets_) {
        if (!k.certified_delta()) {
            return std::nullopt;
        }
        worst = std::max(worst, *k.certified_delta());
    }
    return worst;
}

namespace {

CommCost assemble_cost(
    Topology topology, std::size_t pairs, unsigned hash_total, std::size_t forwarded, std::size_t n1) {
    CommCost c;
    c.topology = topology;
    c.pairs = pairs;
    c.alice_hash_qubits = hash_total;
    c.forwarded_bits = static_cast<unsigned>(forwarded);
    c.classical_baseline = n1;
    if (topology == Topology::one_way) {
        c.alice_to_bob = hash_total + c.forwarded_bits;
        c.total = c.alice_to_bob;
    } else {
        c.bob_hash_qubits = hash_total;
        c.alice_to_referee = hash_total + c.forwarded_bits;
        c.bob_to_referee = hash_total;
        c.total = c.alice_to_referee + c.bob_to_referee;
    }
    return c;
}

}  // namespace

CommCost comm_cost(const ProtocolSpec &spec, Topology topology) {
    unsigned hashes = 0;
    for (const auto &k : spec.key_sets()) {
        hashes += hash_qubits(k);
    }
    if (topology == Topology::smp && spec.forwarded_count() != 0) {
        throw InputError("SMP protocols cannot forward Alice's variables to Bob (k must be 0)");
    }
    return assemble_cost(topology, spec.pairs().size(), hashes, spec.forwarded_count(), spec.n1());
}

CommCost comm_cost(const ProtocolSpec &spec) {
    return comm_cost(spec, spec.topology());
}

CommCost plan_comm_cost(
    std::size_t pairs, const Natural &modulus, double delta, std::size_t forwarded, std::size_t n1,
    Topology topology) {
    if (pairs == 0) {
        throw InputError("a protocol needs at least one polynomial pair");
    }
    unsigned per_hash = hash_qubits(static_cast<std::size_t>(planned_key_count(modulus, delta)));
    return assemble_cost(topology, pairs, static_cast<unsigned>(pairs) * per_hash, forwarded, n1);
}

std::vector<double> RunReport::fidelities() const {
    std::vector<double> out;
    for (const auto &p : pairs) {
        out.push_back(p.fidelity);
    }
    return out;
}

namespace {

void check_split(const ProtocolSpec &spec, BitsView sigma, BitsView gamma) {
    if (sigma.size() != spec.n1() || gamma.size() != spec.n2()) {
        throw InputError(
            "input split mismatch: expected " + std::to_string(spec.n1()) + "+" + std::to_string(spec.n2()) +
            " bits, got " + std::to_string(sigma.size()) + "+" + std::to_string(gamma.size()));
    }
}

Bits joint_input(BitsView sigma, BitsView gamma) {
    Bits in(sigma.begin(), sigma.end());
    in.insert(in.end(), gamma.begin(), gamma.end());
    return in;
}

// The values each party hashes for pair j.
Natural alice_value(const Decomposition &d, BitsView sigma) {
    return eval_poly(d.g1, sigma);
}

Natural bob_value(const Decomposition &d, BitsView sigma, BitsView gamma) {
    return d.g2.modulus().reduce(-eval_poly(d.g2, d.bob_input(sigma, gamma)));
}

RunReport execute(const ProtocolSpec &spec, BitsView sigma, BitsView gamma, Topology topology) {
    check_split(spec, sigma, gamma);
    RunReport report;
    report.sigma.assign(sigma.begin(), sigma.end());
    report.gamma.assign(gamma.begin(), gamma.end());
    report.f_value = spec.function()(joint_input(sigma, gamma));
    report.bounds_certified = spec.bounds_certified();
    report.cost = comm_cost(spec, topology);

    // Alice's message: one hash per pair (plus forwarded bits, one-way only).
    std::vector<HashState> alice_message;
    for (std::size_t j = 0; j < spec.pairs().size(); j++) {
        alice_message.push_back(build_hash(spec.key_sets()[j], alice_value(spec.pairs()[j], sigma)));
    }
    // Bob (one-way) or Bob's message to the referee (SMP).
    std::vector<HashState> bob_side;
    for (std::size_t j = 0; j < spec.pairs().size(); j++) {
        bob_side.push_back(build_hash(spec.key_sets()[j], bob_value(spec.pairs()[j], sigma, gamma)));
    }
    report.exact_accept = 1.0;
    for (std::size_t j = 0; j < spec.pairs().size(); j++) {
        SwapOutcome o = swap_test(alice_message[j], bob_side[j]);
        report.pairs.push_back({alice_message[j].value, bob_side[j].value, o.fidelity, o.accept_probability});
        report.exact_accept *= o.accept_probability;
    }
    return report;
}

void sample_pairs(RunReport &report, std::uint64_t seed) {
    bool accepted = true;
    for (std::size_t j = 0; j < report.pairs.size(); j++) {
        SwapOutcome o{report.pairs[j].fidelity, report.pairs[j].accept_probability};
        if (sample_swap(o, mix_seed(seed, j), 1) == 0) {
            accepted = false;
        }
    }
    report.sampled = accepted;
    report.seed = seed;
}

}  // namespace

RunReport run_exact(const ProtocolSpec &spec, BitsView sigma, BitsView gamma) {
    return execute(spec, sigma, gamma, Topology::one_way);
}

RunReport run_sampled(const ProtocolSpec &spec, BitsView sigma, BitsView gamma, std::uint64_t seed) {
    RunReport report = execute(spec, sigma, gamma, Topology::one_way);
    sample_pairs(report, seed);
    return report;
}

RunReport run_smp(const ProtocolSpec &spec, BitsView sigma, BitsView gamma, std::optional<std::uint64_t> seed) {
    if (spec.forwarded_count() != 0) {
        throw InputError("SMP protocols cannot forward Alice's variables to Bob (k must be 0)");
    }
    RunReport report = execute(spec, sigma, gamma, Topology::smp);
    if (seed) {
        sample_pairs(report, *seed);
    }
    return report;
}

std::uint64_t sample_acceptance(
    const ProtocolSpec &spec, BitsView sigma, BitsView gamma, std::uint64_t seed, std::uint64_t trials) {
    RunReport exact = execute(spec, sigma, gamma, spec.topology());
    auto rng = seeded_engine(seed, 0xacce97);
    std::uint64_t accepted = 0;
    for (std::uint64_t t = 0; t < trials; t++) {
        bool all = true;
        // Every pair is measured even after a rejection so that the stream
        // position depends only on t.
        for (const auto &p : exact.pairs) {
            if (!(uniform_unit(rng) < p.accept_probability)) {
                all = false;
            }
        }
        accepted += all ? 1 : 0;
    }
    return accepted;
}

ErrorProfile error_profile(const ProtocolSpec &spec, unsigned threads) {
    std::size_t n1 = spec.n1();
    std::size_t n2 = spec.n2();
    if (n1 + n2 > kProfileGuard) {
        throw GuardError(
            "refusing to profile 2^" + std::to_string(n1 + n2) + " inputs (guard is n1 + n2 <= " +
            std::to_string(kProfileGuard) + "); use sampled runs instead");
    }
    std::uint64_t cells = std::uint64_t{1} << (n1 + n2);
    const auto &pairs = spec.pairs();
    const auto &keys = spec.key_sets();

    // Fidelity depends only on u - v, which lies in (-m, m). Tabulate it when
    // that is cheaper than evaluating per cell.
    const Natural &m = spec.modulus().value();
    bool tabulate = m <= Natural(cells);
    std::vector<std::vector<double>> table(pairs.size());
    std::uint64_t small_m = tabulate ? static_cast<std::uint64_t>(m) : 0;
    if (tabulate) {
        for (std::size_t j = 0; j < pairs.size(); j++) {
            table[j].resize(2 * small_m - 1);
            for (std::uint64_t t = 0; t < 2 * small_m - 1; t++) {
                Natural diff = Natural(t) - Natural(small_m - 1);
                table[j][t] = bias(keys[j], diff);
            }
        }
    }

    ErrorProfile profile;
    profile.function_id = spec.function().name();
    profile.n1 = n1;
    profile.n2 = n2;
    profile.rows.resize(cells);
    parallel_chunks(cells, threads, [&](std::size_t, std::uint64_t begin, std::uint64_t end) {
        Bits in(n1 + n2);
        for (std::uint64_t idx = begin; idx < end; idx++) {
            assignment_from_index(idx, in);
            BitsView sigma(in.data(), n1);
            BitsView gamma(in.data() + n1, n2);
            double accept = 1.0;
            for (std::size_t j = 0; j < pairs.size(); j++) {
                Natural u = alice_value(pairs[j], sigma);
                Natural v = bob_value(pairs[j], sigma, gamma);
                double fidelity;
                if (tabulate) {
                    auto t = static_cast<std::uint64_t>(Natural(u - v + Natural(small_m - 1)));
                    fidelity = table[j][t];
                } else {
                    fidelity = bias(keys[j], u - v);
                }
                accept *= swap_outcome(fidelity).accept_probability;
            }
            profile.rows[idx] = ProfileRow{idx >> n2, idx & ((std::uint64_t{1} << n2) - 1), spec.function()(in), accept};
        }
    });

    // Sequential aggregation in lexicographic order: the first maximum wins.
    std::optional<std::uint64_t> worst_idx;
    for (std::uint64_t idx = 0; idx < cells; idx++) {
        const auto &row = profile.rows[idx];
        if (row.f) {
            profile.one_inputs++;
            profile.min_accept_on_ones = std::min(profile.min_accept_on_ones, row.exact_accept);
            if (std::abs(row.exact_accept - 1.0) > kCertaintyTolerance) {
                profile.one_sided_violations++;
            }
            continue;
        }
        profile.zero_inputs++;
        auto bin = static_cast<std::size_t>(std::floor(row.exact_accept * kHistogramBins));
        profile.histogram[std::min(bin, kHistogramBins - 1)]++;
        if (!worst_idx || row.exact_accept > profile.worst_false_accept) {
            profile.worst_false_accept = row.exact_accept;
            worst_idx = idx;
        }
    }
    if (worst_idx) {
        Bits in(n1 + n2);
        assignment_from_index(*worst_idx, in);
        profile.worst_sigma = Bits(in.begin(), in.begin() + static_cast<std::ptrdiff_t>(n1));
        profile.worst_gamma = Bits(in.begin() + static_cast<std::ptrdiff_t>(n1), in.end());
    }
    if (auto delta = spec.bound_delta()) {
        profile.bound = (1.0 + *delta * *delta) / 2.0;
        profile.secondary_bound = *delta / 2.0 + 0.5;
        profile.bound_certified = spec.bounds_certified();
    }
    return profile;
}

}  // namespace qhc
