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

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "otoclab/noise.hpp"

namespace otoclab {

struct ModelConfig {
    std::string type = "xy_chain";  // sublattice chain, AB part
    int n = 6;
    double coupling = 1.0;
};

struct VarprepConfig {
    std::string spectrum = "uniform";  // or "zsum"
    double param = 0.0;                // sigma / q, distribution-dependent
    int zsum_k = 5;
    int depth = 2;
    int grid = 64;
};

// One experiment as described by a TOML or JSON config file. Sites are
// 0-based.
struct ExperimentConfig {
    std::string preset;
    ModelConfig model;
    int w_site = 0;
    int v_site = 0;
    double t_start = 0.0;
    double t_stop = 3.0;
    int t_points = 61;
    std::int64_t shots = 0;
    std::uint64_t seed = 1;
    NoiseConfig noise;
    std::vector<double> strengths;  // optional sweep for the noise command
    VarprepConfig varprep;
};

// Reads .toml or .json (decided by extension; JSON when ambiguous),
// resolves a preset if named, applies explicit overrides, validates.
ExperimentConfig load_config(const std::string& path);

// Built-in presets: fig2b, fig3a, fig3b, fig3f, figs1a, fig4b, fig4c,
// table-s1.
ExperimentConfig preset_config(const std::string& name);
std::vector<std::string> preset_names();

// Minimal TOML subset -> JSON text: top-level and [dotted.table] sections,
// scalar / flat-array values, # comments.
std::string toml_to_json(const std::string& text);

// FNV-1a of the raw config bytes, for the run manifest.
std::uint64_t config_hash(const std::string& bytes);

// The model's Hamiltonian (AB sublattice XY chain for "xy_chain").
HamiltonianSpec build_model(const ModelConfig& m);

}  // namespace otoclab
