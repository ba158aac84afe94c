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

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "qhc/cli.h"
#include "qhc/config.h"
#include "qhc/error.h"

using namespace qhc;
namespace fs = std::filesystem;

namespace {

class Scratch {
   public:
    Scratch() {
        const auto *info = ::testing::UnitTest::GetInstance()->current_test_info();
        dir_ = fs::temp_directory_path() / ("qhc_test_" + std::string(info->test_suite_name()) + "_" + info->name());
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    ~Scratch() {
        fs::remove_all(dir_);
    }
    std::string path(const std::string &name) const {
        return (dir_ / name).string();
    }
    std::string write(const std::string &name, const std::string &text) const {
        std::ofstream(path(name)) << text;
        return path(name);
    }
    std::string write_json(const std::string &name, const Json &doc) const {
        return write(name, doc.dump(2));
    }
    std::string read(const std::string &name) const {
        std::ifstream in(path(name));
        std::stringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }

   private:
    fs::path dir_;
};

struct Outcome {
    int code;
    std::string out;
    std::string err;
    Json json() const {
        return Json::parse(out);
    }
};

Outcome invoke(const std::vector<std::string> &args) {
    std::ostringstream out;
    std::ostringstream err;
    int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

Json eq3_config() {
    return Json::parse(R"({
        "function": {"name": "EQ", "n": 3},
        "delta": 0.3,
        "keys": {"seed": 7, "log2_n": 6},
        "mode": "exact",
        "inputs": [{"alice": "101", "bob": "101"}, {"alice": "101", "bob": "100"}]
    })");
}

std::string config_error_path(const Json &doc) {
    try {
        parse_config(doc);
    } catch (const ConfigError &e) {
        return e.json_path;
    }
    return "<accepted>";
}

}  // namespace

TEST(parse_config, minimal_profile_config) {
    auto cfg = parse_config(Json::parse(R"({"function":{"name":"EQ","n":4}, "delta":0.3, "mode":"profile"})"));
    ASSERT_EQ(cfg.function.name, "EQ");
    ASSERT_EQ(cfg.function.n, 4u);
    ASSERT_EQ(cfg.mode, RunMode::profile);
    ASSERT_EQ(cfg.keys.kind, KeySourceKind::search);
    ASSERT_EQ(cfg.topology, Topology::one_way);
}

TEST(parse_config, delta_out_of_range) {
    auto doc = eq3_config();
    doc["delta"] = 1.5;
    try {
        parse_config(doc);
        FAIL() << "accepted delta 1.5";
    } catch (const ConfigError &e) {
        ASSERT_EQ(e.json_path, "/delta");
        ASSERT_NE(std::string(e.what()).find("delta out of (0,1)"), std::string::npos);
    }
}

TEST(parse_config, arity_mismatch_on_split) {
    auto doc = Json::parse(R"({"function":{"name":"PERM","n":2}, "delta":0.3, "split":{"n1":1,"n2":2}})");
    ASSERT_EQ(config_error_path(doc), "/split");
    doc["split"] = {{"n1", 1}, {"n2", 3}};
    ASSERT_EQ(config_error_path(doc), "<accepted>");
}

TEST(parse_config, error_paths) {
    auto doc = eq3_config();
    doc["colour"] = "blue";
    ASSERT_EQ(config_error_path(doc), "/colour");

    doc = eq3_config();
    doc["function"]["name"] = "XOR";
    ASSERT_EQ(config_error_path(doc), "/function/name");

    doc = eq3_config();
    doc["function"] = {{"name", "MOD"}, {"n", 4}};
    ASSERT_EQ(config_error_path(doc), "/function/m");

    doc = eq3_config();
    doc["mode"] = "fast";
    ASSERT_EQ(config_error_path(doc), "/mode");

    doc = eq3_config();
    doc["mode"] = "sampled";
    ASSERT_EQ(config_error_path(doc), "/trials");

    doc = eq3_config();
    doc["keys"] = {{"source", "file"}, {"path", "/nonexistent/keys.json"}};
    ASSERT_EQ(config_error_path(doc), "/keys/path");

    doc = eq3_config();
    doc["inputs"][1]["bob"] = "10";
    ASSERT_EQ(config_error_path(doc).rfind("/inputs/1", 0), 0u);

    doc = eq3_config();
    doc["topology"] = "smp";
    doc["split"] = {{"forwarded", {0}}};
    ASSERT_EQ(config_error_path(doc), "/split/forwarded");
}

TEST(parse_config, round_trips_through_serialization) {
    std::vector<Json> docs = {
        eq3_config(),
        Json::parse(R"({"function":{"name":"CONJ","parts":[{"name":"MOD","n":3,"m":3},{"name":"MODBIN","n":3,"m":4}]},
                        "delta":0.4, "mode":"sampled", "trials":50, "seed":3, "topology":"smp"})"),
        Json::parse(R"({"function":{"name":"MODBIN","n":6,"m":5}, "split":{"n1":4,"forwarded":[1,3]}, "delta":0.2,
                        "keys":{"seed":2,"attempts":4,"key_count":9}})"),
        Json::parse(R"({"function":{"name":"INLINE","polynomials":[{"modulus":"4","constant":"0","coeffs":["1","3"]}]},
                        "delta":0.5})"),
    };
    for (const auto &doc : docs) {
        auto cfg = parse_config(doc);
        auto again = parse_config(serialize_config(cfg));
        ASSERT_EQ(cfg, again) << doc.dump();
        ASSERT_EQ(serialize_config(cfg), serialize_config(again));
    }
}

TEST(prepare_spec, searched_sets_are_certified_per_pair) {
    auto cfg = parse_config(Json::parse(
        R"({"function":{"name":"CONJ","parts":[{"name":"MOD","n":3,"m":3},{"name":"MODBIN","n":3,"m":4}]},
            "delta":0.4, "keys":{"seed":5}})"));
    auto spec = prepare_spec(cfg);
    ASSERT_EQ(spec.key_sets().size(), 2u);
    ASSERT_TRUE(spec.bounds_certified());
    ASSERT_EQ(spec.key_sets()[0].modulus(), 12);
}

TEST(cli_verify, builtins_pass) {
    for (auto args : std::vector<std::vector<std::string>>{
             {"verify", "--function", "PALINDROME", "--n", "5"},
             {"verify", "--function", "PERM", "--n", "2"},
             {"verify", "--function", "MODBIN", "--n", "8", "--m", "5"},
         }) {
        auto r = invoke(args);
        ASSERT_EQ(r.code, cli::kExitOk) << r.err;
        ASSERT_EQ(r.json()["valid"], true);
    }
}

TEST(cli_verify, corrupted_polynomial_reports_counterexample) {
    Scratch s;
    auto poly = s.write("poly.json", R"({"polynomials":[{"modulus":"4","constant":"1","coeffs":["1","2","0","2","1"]}]})");
    auto r = invoke({"verify", "--function", "PALINDROME", "--n", "5", "--poly", poly});
    ASSERT_EQ(r.code, cli::kExitCounterexample);
    auto j = r.json();
    ASSERT_EQ(j["valid"], false);
    ASSERT_EQ(j["counterexample"], "00000");
}

TEST(cli_verify, guard_and_malformed_input) {
    ASSERT_EQ(invoke({"verify", "--function", "MOD", "--n", "25", "--m", "3"}).code, cli::kExitGuard);
    ASSERT_EQ(invoke({"verify", "--function", "NOPE", "--n", "3"}).code, cli::kExitMalformed);
    ASSERT_EQ(invoke({"verify", "--n", "3"}).code, cli::kExitMalformed);
    ASSERT_EQ(invoke({"frobnicate"}).code, cli::kExitMalformed);
    ASSERT_EQ(invoke({}).code, cli::kExitMalformed);
}

TEST(cli_search, writes_certified_key_file_and_is_reproducible) {
    Scratch s;
    auto r = invoke({"search-keys", "--log2-n", "10", "--delta", "0.3", "--seed", "1", "--out", s.path("k.json")});
    ASSERT_EQ(r.code, cli::kExitOk) << r.err;
    ASSERT_EQ(r.json()["d"], 170);
    ASSERT_EQ(r.json()["certified"], true);
    auto first = s.read("k.json");
    ASSERT_EQ(invoke({"search-keys", "--log2-n", "10", "--delta", "0.3", "--seed", "1", "--out", s.path("k.json")}).code, 0);
    ASSERT_EQ(first, s.read("k.json"));
    ASSERT_EQ(Json::parse(first)["certification"]["mode"], "exact");

    ASSERT_EQ(invoke({"search-keys", "--log2-n", "10", "--delta", "1.5"}).code, cli::kExitMalformed);
    ASSERT_EQ(invoke({"search-keys", "--log2-n", "30", "--delta", "0.3"}).code, cli::kExitGuard);
    ASSERT_EQ(invoke({"search-keys", "--log2-n", "10", "--delta", "0.1", "--key-count", "2", "--attempts", "3"}).code,
              cli::kExitCounterexample);
}

TEST(cli_run, exact_report_contents_and_determinism) {
    Scratch s;
    auto cfg = s.write_json("eq3.json", eq3_config());
    auto a = invoke({"run", "--config", cfg});
    auto b = invoke({"run", "--config", cfg});
    ASSERT_EQ(a.code, cli::kExitOk) << a.err;
    ASSERT_EQ(cli::canonical_report(a.json()), cli::canonical_report(b.json()));
    auto j = a.json();
    ASSERT_TRUE(j.contains("timing"));
    ASSERT_EQ(j["results"].size(), 2u);
    ASSERT_EQ(j["results"][0]["f"], 1);
    ASSERT_EQ(j["results"][0]["exact_accept"], 1.0);
    ASSERT_EQ(j["results"][1]["f"], 0);
    ASSERT_LE(j["results"][1]["exact_accept"].get<double>(), 0.545 + 1e-9);
    ASSERT_EQ(j["spec"]["bounds"], "certified");
}

TEST(cli_run, thread_count_does_not_change_reports) {
    Scratch s;
    auto cfg = s.write_json("eq3.json", eq3_config());
    auto one = invoke({"run", "--config", cfg, "--threads", "1"});
    auto many = invoke({"run", "--config", cfg, "--threads", "6"});
    ASSERT_EQ(one.code, 0);
    ASSERT_EQ(cli::canonical_report(one.json()), cli::canonical_report(many.json()));
}

TEST(cli_run, sampled_mode_within_band) {
    Scratch s;
    auto doc = eq3_config();
    doc["mode"] = "sampled";
    doc["trials"] = 100000;
    doc["seed"] = 11;
    auto cfg = s.write_json("eq3.json", doc);
    auto r = invoke({"run", "--config", cfg});
    ASSERT_EQ(r.code, 0) << r.err;
    auto report = r.json();
    for (const auto &res : report["results"]) {
        ASSERT_EQ(res["sampled_runs"]["within_band"], true);
    }
    auto other = invoke({"run", "--config", cfg, "--seed", "12"});
    ASSERT_NE(report["results"][1]["sampled_runs"], other.json()["results"][1]["sampled_runs"]);
}

TEST(cli_run, file_key_source) {
    Scratch s;
    ASSERT_EQ(invoke({"search-keys", "--log2-n", "6", "--delta", "0.3", "--out", s.path("keys.json")}).code, 0);
    auto doc = eq3_config();
    doc["keys"] = {{"source", "file"}, {"path", "keys.json"}};
    auto r = invoke({"run", "--config", s.write_json("cfg.json", doc)});
    ASSERT_EQ(r.code, 0) << r.err;
    ASSERT_EQ(r.json()["spec"]["bounds"], "certified");

    s.write("bad.json", R"({"N":"8","keys":["1"],"delta":0.5,"certification":{"mode":"exact"}})");
    doc["keys"]["path"] = "bad.json";
    ASSERT_EQ(invoke({"run", "--config", s.write_json("cfg2.json", doc)}).code, cli::kExitCounterexample);
}

TEST(cli_run, malformed_configs) {
    Scratch s;
    ASSERT_EQ(invoke({"run", "--config", s.write("broken.json", "{ not json")}).code, cli::kExitMalformed);
    ASSERT_EQ(invoke({"run", "--config", s.path("missing.json")}).code, cli::kExitMalformed);
    ASSERT_EQ(invoke({"run", "--config", s.write_json("c.json", eq3_config()), "--delta", "2"}).code, cli::kExitMalformed);
}

TEST(cli_profile, eq3_csv_and_summary) {
    Scratch s;
    auto doc = eq3_config();
    doc.erase("inputs");
    auto r = invoke({"profile", "--config", s.write_json("eq3.json", doc), "--out", s.path("eq3.csv")});
    ASSERT_EQ(r.code, 0) << r.err;
    auto csv = s.read("eq3.csv");
    ASSERT_EQ(csv.substr(0, csv.find('\n')), "sigma,gamma,f,exact_accept");
    ASSERT_EQ(std::count(csv.begin(), csv.end(), '\n'), 65);
    auto j = r.json();
    ASSERT_LE(j["profile"]["worst_false_accept"].get<double>(), 0.545 + 1e-9);
    ASSERT_EQ(j["profile"]["one_sided_violations"], 0);
}
