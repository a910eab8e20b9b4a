// Copyright 2026 The otoc-lab Authors
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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "json.hpp"
#include "otoclab/config.hpp"

using namespace otoclab;
using nlohmann::json;

namespace {

std::filesystem::path write_temp(const std::string& name,
                                 const std::string& text) {
    const auto path = std::filesystem::temp_directory_path() / name;
    std::ofstream out(path, std::ios::binary);
    out << text;
    return path;
}

constexpr const char* kToml = R"(# experiment
preset = "fig3a"
shots = 500
seed = 7

[model]
n = 4
coupling = 1.5

[sites]
w = 1
v = 3

[times]
start = 0.0
stop = 2.0
points = 11

[noise]
channel = "readout"
strength = 0.1
strengths = [0.05, 0.1, 0.2]
)";

}  // namespace

TEST_CASE("toml subset translates to the expected JSON tree") {
    const json j = json::parse(toml_to_json(kToml));
    CHECK(j["preset"] == "fig3a");
    CHECK(j["shots"] == 500);
    CHECK(j["model"]["n"] == 4);
    CHECK(j["model"]["coupling"] == 1.5);
    CHECK(j["noise"]["channel"] == "readout");
    REQUIRE(j["noise"]["strengths"].size() == 3);
    CHECK(j["noise"]["strengths"][2] == 0.2);

    CHECK_THROWS(toml_to_json("key value_without_equals"));
    CHECK_THROWS(toml_to_json("x = [1, 2"));
    // Comments inside strings survive.
    const json q = json::parse(toml_to_json("s = \"a # b\"  # real comment"));
    CHECK(q["s"] == "a # b");
}

TEST_CASE("load_config: TOML and JSON agree, overrides beat the preset") {
    const auto toml_path = write_temp("otoclab_cfg.toml", kToml);
    const auto cfg = load_config(toml_path.string());
    CHECK(cfg.preset == "fig3a");
    CHECK(cfg.model.n == 4);          // override wins over the preset's 6
    CHECK(cfg.model.coupling == 1.5);
    CHECK(cfg.w_site == 1);
    CHECK(cfg.v_site == 3);
    CHECK(cfg.shots == 500);
    CHECK(cfg.seed == 7);
    CHECK(cfg.noise.kind == Channel::readout);
    CHECK(cfg.noise.strength == 0.1);
    REQUIRE(cfg.strengths.size() == 3);

    const json j = json::parse(toml_to_json(kToml));
    const auto json_path = write_temp("otoclab_cfg.json", j.dump(2));
    const auto cfg2 = load_config(json_path.string());
    CHECK(cfg2.model.n == cfg.model.n);
    CHECK(cfg2.v_site == cfg.v_site);
    CHECK(cfg2.noise.strength == cfg.noise.strength);
    std::filesystem::remove(toml_path);
    std::filesystem::remove(json_path);
}

TEST_CASE("validation rejects out-of-range settings") {
    // 0-based sites: v = n is one past the last site.
    const auto bad_site = write_temp("otoclab_bad1.json",
                                     R"({"model":{"n":4},"sites":{"v":4}})");
    CHECK_THROWS(load_config(bad_site.string()));
    const auto bad_n = write_temp("otoclab_bad2.json", R"({"model":{"n":1}})");
    CHECK_THROWS(load_config(bad_n.string()));
    const auto bad_x = write_temp(
        "otoclab_bad3.json",
        R"({"model":{"n":4},"noise":{"channel":"readout","strength":0.9}})");
    CHECK_THROWS(load_config(bad_x.string()));
    for (const auto& p : {bad_site, bad_n, bad_x}) std::filesystem::remove(p);
    CHECK_THROWS(load_config("/nonexistent/path.toml"));
}

TEST_CASE("presets are all valid and self-consistent") {
    for (const auto& name : preset_names()) {
        const auto cfg = preset_config(name);
        CHECK(cfg.preset == name);
        CHECK(cfg.model.n >= 2);
    }
    CHECK_THROWS(preset_config("fig99"));
    const auto fig2b = preset_config("fig2b");
    CHECK(fig2b.model.n == 10);
    CHECK(fig2b.w_site == 4);  // middle of the chain, 0-based
    CHECK(fig2b.t_points == 61);
}

TEST_CASE("config_hash: deterministic and content-sensitive") {
    CHECK(config_hash("abc") == config_hash("abc"));
    CHECK(config_hash("abc") != config_hash("abd"));
    CHECK(config_hash("") == 14695981039346656037ULL);  // FNV-1a offset basis
}

TEST_CASE("build_model produces the sublattice chain") {
    ModelConfig m;
    m.n = 5;
    m.coupling = 2.0;
    const auto h = build_model(m);
    CHECK(h.num_qubits == 5);
    // AB part only: pairs with one even and one odd site, 2 terms each.
    CHECK(h.terms.size() == 2 * 6);
    m.type = "unknown";
    CHECK_THROWS(build_model(m));
}
