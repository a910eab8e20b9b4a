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

#include "otoclab/config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace otoclab {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& msg) {
    throw std::invalid_argument("config: " + msg);
}

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

json toml_scalar(const std::string& raw) {
    const std::string v = trim(raw);
    if (v.empty()) fail("empty TOML value");
    if (v.front() == '"') {
        if (v.size() < 2 || v.back() != '"') fail("unterminated string: " + v);
        return v.substr(1, v.size() - 2);
    }
    if (v == "true") return true;
    if (v == "false") return false;
    try {
        std::size_t used = 0;
        if (v.find_first_of(".eE") == std::string::npos ||
            (v.size() > 1 && v.substr(0, 2) == "0x")) {
            const long long i = std::stoll(v, &used);
            if (used == v.size()) return i;
        }
        const double d = std::stod(v, &used);
        if (used == v.size()) return d;
    } catch (const std::exception&) {
    }
    fail("cannot parse TOML value: " + v);
}

json toml_value(const std::string& raw) {
    const std::string v = trim(raw);
    if (!v.empty() && v.front() == '[') {
        if (v.back() != ']') fail("unterminated array: " + v);
        json arr = json::array();
        std::string inner = v.substr(1, v.size() - 2);
        std::stringstream ss(inner);
        std::string item;
        while (std::getline(ss, item, ','))
            if (!trim(item).empty()) arr.push_back(toml_scalar(item));
        return arr;
    }
    return toml_scalar(v);
}

// Strips a # comment that is not inside a quoted string.
std::string strip_comment(const std::string& line) {
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        if (line[i] == '"') quoted = !quoted;
        if (line[i] == '#' && !quoted) return line.substr(0, i);
    }
    return line;
}

json* descend(json& root, const std::string& dotted) {
    json* node = &root;
    std::stringstream ss(dotted);
    std::string part;
    while (std::getline(ss, part, '.')) {
        part = trim(part);
        if (part.empty()) fail("bad table name [" + dotted + "]");
        node = &(*node)[part];
    }
    return node;
}

}  // namespace

std::string toml_to_json(const std::string& text) {
    json root = json::object();
    json* table = &root;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        line = trim(strip_comment(line));
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                fail("line " + std::to_string(lineno) + ": bad table header");
            table = descend(root, line.substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            fail("line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        if (key.empty()) fail("line " + std::to_string(lineno) + ": empty key");
        (*table)[key] = toml_value(line.substr(eq + 1));
    }
    return root.dump();
}

std::uint64_t config_hash(const std::string& bytes) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

HamiltonianSpec build_model(const ModelConfig& m) {
    if (m.type != "xy_chain") fail("unknown model type '" + m.type + "'");
    return build_xy_chain(m.n, m.coupling, ChainPart::AB);
}

namespace {

void check_range(bool ok, const std::string& msg) {
    if (!ok) fail(msg);
}

ExperimentConfig from_json(const json& j);

ExperimentConfig apply_overrides(ExperimentConfig cfg, const json& j) {
    if (j.contains("model")) {
        const auto& m = j["model"];
        if (m.contains("type")) cfg.model.type = m["type"].get<std::string>();
        if (m.contains("n")) cfg.model.n = m["n"].get<int>();
        if (m.contains("coupling")) cfg.model.coupling = m["coupling"].get<double>();
        if (m.contains("J")) cfg.model.coupling = m["J"].get<double>();
    }
    if (j.contains("sites")) {
        const auto& s = j["sites"];
        if (s.contains("w")) cfg.w_site = s["w"].get<int>();
        if (s.contains("v")) cfg.v_site = s["v"].get<int>();
    }
    if (j.contains("times")) {
        const auto& t = j["times"];
        if (t.contains("start")) cfg.t_start = t["start"].get<double>();
        if (t.contains("stop")) cfg.t_stop = t["stop"].get<double>();
        if (t.contains("points")) cfg.t_points = t["points"].get<int>();
    }
    if (j.contains("shots")) cfg.shots = j["shots"].get<std::int64_t>();
    if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("noise")) {
        const auto& n = j["noise"];
        if (n.contains("channel"))
            cfg.noise.kind = channel_from_name(n["channel"].get<std::string>());
        if (n.contains("strength")) cfg.noise.strength = n["strength"].get<double>();
        if (n.contains("draws")) cfg.noise.draws = n["draws"].get<int>();
        if (n.contains("lindblad_dt"))
            cfg.noise.lindblad_dt = n["lindblad_dt"].get<double>();
        if (n.contains("strengths"))
            cfg.strengths = n["strengths"].get<std::vector<double>>();
    }
    if (j.contains("varprep")) {
        const auto& v = j["varprep"];
        if (v.contains("spectrum")) cfg.varprep.spectrum = v["spectrum"].get<std::string>();
        if (v.contains("param")) cfg.varprep.param = v["param"].get<double>();
        if (v.contains("k")) cfg.varprep.zsum_k = v["k"].get<int>();
        if (v.contains("depth")) cfg.varprep.depth = v["depth"].get<int>();
        if (v.contains("grid")) cfg.varprep.grid = v["grid"].get<int>();
    }
    return cfg;
}

void validate(const ExperimentConfig& cfg) {
    check_range(cfg.model.n >= 2 && cfg.model.n <= 12,
                "model.n must lie in [2, 12] (dense-trace budget)");
    check_range(cfg.model.coupling > 0.0, "model coupling must be > 0");
    check_range(cfg.w_site >= 0 && cfg.w_site < cfg.model.n,
                "sites.w out of range (sites are 0-based)");
    check_range(cfg.v_site >= 0 && cfg.v_site < cfg.model.n,
                "sites.v out of range (sites are 0-based)");
    check_range(cfg.t_points >= 0, "times.points must be >= 0");
    check_range(cfg.t_stop >= cfg.t_start, "times.stop must be >= times.start");
    check_range(cfg.shots >= 0, "shots must be >= 0");
    check_range(cfg.varprep.depth >= 0 && cfg.varprep.depth <= 3,
                "varprep.depth must lie in [0, 3]");
    check_range(cfg.varprep.grid >= 2, "varprep.grid must be >= 2");
    cfg.noise.validate();
    for (double s : cfg.strengths)
        check_range(s >= 0.0, "noise.strengths entries must be >= 0");
}

ExperimentConfig from_json(const json& j) {
    ExperimentConfig cfg;
    if (j.contains("preset")) {
        cfg = preset_config(j["preset"].get<std::string>());
    }
    cfg = apply_overrides(std::move(cfg), j);
    validate(cfg);
    return cfg;
}

}  // namespace

ExperimentConfig preset_config(const std::string& name) {
    ExperimentConfig cfg;
    cfg.preset = name;
    if (name == "fig2b") {
        // n=10 chain, W on the middle site, V swept over j >= w in the CLI.
        cfg.model.n = 10;
        cfg.w_site = 4;
        cfg.v_site = 9;
        cfg.shots = 100;
        cfg.t_points = 61;
    } else if (name == "fig3a") {
        cfg.model.n = 6;
        cfg.w_site = 0;
        cfg.v_site = 5;
        cfg.shots = 1000;
        cfg.t_stop = 2.0;
        cfg.t_points = 41;
    } else if (name == "fig3b") {
        cfg.model.n = 6;
        cfg.w_site = 0;
        cfg.v_site = 5;
        cfg.noise.kind = Channel::depolarizing;
        cfg.noise.strength = 0.1;
        cfg.t_stop = 2.0;
        cfg.t_points = 41;
    } else if (name == "fig3f") {
        cfg.model.n = 6;
        cfg.w_site = 0;
        cfg.v_site = 5;
        cfg.noise.kind = Channel::intercopy_coupling;
        cfg.noise.strength = 0.05;
        cfg.t_stop = 1.5;
        cfg.t_points = 16;
    } else if (name == "figs1a") {
        cfg.model.n = 6;
        cfg.w_site = 0;
        cfg.v_site = 5;
        cfg.noise.kind = Channel::imperfect_bell;
        cfg.noise.strength = 0.05;
        cfg.noise.draws = 400;
        cfg.t_stop = 2.0;
        cfg.t_points = 21;
    } else if (name == "fig4b") {
        cfg.varprep.spectrum = "zsum";
        cfg.varprep.zsum_k = 5;
        cfg.varprep.depth = 2;
        cfg.model.n = 5;
    } else if (name == "fig4c") {
        cfg.varprep.spectrum = "uniform";
        cfg.varprep.depth = 2;
    } else if (name == "table-s1") {
        cfg.varprep.spectrum = "table-s1";
    } else {
        fail("unknown preset '" + name + "'");
    }
    return cfg;
}

std::vector<std::string> preset_names() {
    return {"fig2b", "fig3a", "fig3b", "fig3f", "figs1a",
            "fig4b", "fig4c", "table-s1"};
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail("cannot open '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    std::string text = buf.str();
    const bool toml = path.size() > 5 && path.substr(path.size() - 5) == ".toml";
    if (toml) text = toml_to_json(text);
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        fail(std::string("parse error in '") + path + "': " + e.what());
    }
    if (!j.is_object()) fail("top level must be a table/object");
    return from_json(j);
}

}  // namespace otoclab
