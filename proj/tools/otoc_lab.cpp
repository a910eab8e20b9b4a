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

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <omp.h>

#include "CLI11.hpp"
#include "json.hpp"

#include "otoclab/config.hpp"
#include "otoclab/noise.hpp"
#include "otoclab/otoc.hpp"
#include "otoclab/plot.hpp"
#include "otoclab/varprep.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace otoclab;

namespace {

constexpr const char* kVersion = "otoc-lab 0.1.0";

struct CliState {
    std::string config_path;
    std::string out_dir = "out";
    std::optional<std::uint64_t> seed;
    std::optional<std::int64_t> shots;
    std::vector<std::string> files;
};

void apply_thread_env() {
    if (const char* env = std::getenv("OTOC_LAB_THREADS")) {
        const int t = std::atoi(env);
        if (t > 0) omp_set_num_threads(t);
    }
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::ofstream open_out(CliState& st, const std::string& name) {
    fs::create_directories(st.out_dir);
    const fs::path p = fs::path(st.out_dir) / name;
    std::ofstream out(p);
    if (!out) throw std::runtime_error("cannot write '" + p.string() + "'");
    st.files.push_back(name);
    return out;
}

void write_manifest(CliState& st, const std::string& command,
                    const ExperimentConfig& cfg) {
    json m;
    m["tool"] = kVersion;
    m["command"] = command;
    m["config"] = st.config_path;
    m["config_hash"] = config_hash(read_file(st.config_path));
    m["preset"] = cfg.preset;
    m["seed"] = cfg.seed;
    m["shots"] = cfg.shots;
    m["outputs"] = st.files;
    auto out = open_out(st, "manifest.json");
    out << m.dump(2) << "\n";
}

ExperimentConfig load_with_overrides(const CliState& st) {
    ExperimentConfig cfg = load_config(st.config_path);
    ExperimentConfig out = cfg;
    if (st.seed) out.seed = *st.seed;
    if (st.shots) out.shots = *st.shots;
    return out;
}

SeriesConfig to_series_config(const ExperimentConfig& cfg) {
    SeriesConfig sc;
    sc.h = build_model(cfg.model);
    sc.w_site = cfg.w_site;
    sc.v_site = cfg.v_site;
    sc.times = time_grid(cfg.t_start, cfg.t_stop, cfg.t_points);
    sc.shots = cfg.shots;
    sc.seed = cfg.seed;
    sc.model_name = cfg.model.type + "-n" + std::to_string(cfg.model.n);
    return sc;
}

int cmd_otoc(CliState& st) {
    const ExperimentConfig cfg = load_with_overrides(st);
    std::vector<int> v_sites;
    if (cfg.preset == "fig2b")
        for (int j = cfg.w_site; j < cfg.model.n; ++j) v_sites.push_back(j);
    else
        v_sites.push_back(cfg.v_site);

    std::vector<plot::Series> curves;
    for (int v : v_sites) {
        SeriesConfig sc = to_series_config(cfg);
        sc.v_site = v;
        const OtocSeries series = run_series(sc);
        auto csv = open_out(st, "otoc_w" + std::to_string(cfg.w_site) + "_v" +
                                    std::to_string(v) + ".csv");
        write_series_csv(series, csv);
        plot::Series exact{"exact v=" + std::to_string(v), {}, {}, false};
        plot::Series sampled{"sampled v=" + std::to_string(v), {}, {}, true};
        for (const auto& p : series.points) {
            exact.x.push_back(p.t);
            exact.y.push_back(p.exact);
            if (p.sampled) {
                sampled.x.push_back(p.t);
                sampled.y.push_back(p.sampled->estimate);
            }
        }
        curves.push_back(std::move(exact));
        if (!sampled.x.empty()) curves.push_back(std::move(sampled));
        if (!series.antisymmetric)
            std::cerr << "warning: Hamiltonian is not antisymmetric in the "
                         "working frame; protocol values are not OTOCs\n";
    }
    auto svg = open_out(st, "otoc_series.svg");
    plot::write_line_svg(svg, {"OTOC series", "Jt", "O(t)"}, curves);
    write_manifest(st, "otoc", cfg);
    return 0;
}

int cmd_noise(CliState& st) {
    const ExperimentConfig cfg = load_with_overrides(st);
    if (cfg.noise.kind == Channel::none)
        throw std::runtime_error("noise command needs a noise.channel entry");
    std::vector<double> strengths = cfg.strengths;
    if (strengths.empty()) strengths.push_back(cfg.noise.strength);

    auto err_csv = open_out(st, "noise_errors.csv");
    err_csv << "t,o_minus_est,one_minus_baseline,o_minus_rescaled,channel,"
               "strength\n";
    std::vector<plot::Series> curves;
    for (double s : strengths) {
        NoiseConfig nc = cfg.noise;
        nc.strength = s;
        const OtocSeries series = channel_series(nc, to_series_config(cfg));
        {
            std::ostringstream name;
            name << "noise_" << channel_name(nc.kind) << "_" << s << ".csv";
            auto csv = open_out(st, name.str());
            write_series_csv(series, csv);
        }
        plot::Series curve{"|O-Obar| s=" + std::to_string(s), {}, {}, false};
        for (const auto& p : series.points) {
            const double est = p.sampled ? p.sampled->estimate : p.protocol;
            err_csv << p.t << ',' << p.exact - est << ',' << 1.0 - p.baseline
                    << ',' << p.exact - p.rescaled << ',' << series.channel
                    << ',' << s << "\n";
            curve.x.push_back(p.t);
            curve.y.push_back(std::abs(p.exact - p.rescaled));
        }
        curves.push_back(std::move(curve));
    }
    auto svg = open_out(st, "noise_errors.svg");
    plot::write_line_svg(svg, {"Rescaled-OTOC error", "Jt", "|O - Obar|"},
                         curves);
    write_manifest(st, "noise", cfg);
    return 0;
}

int cmd_varprep(CliState& st) {
    const ExperimentConfig cfg = load_with_overrides(st);
    const auto& vp = cfg.varprep;

    if (vp.spectrum == "table-s1") {
        auto csv = open_out(st, "varprep_summary.csv");
        csv << "distribution,p,max_fidelity\n";
        struct Row {
            const char* name;
            int p;
        };
        for (const Row& row : {Row{"bernoulli", 1}, Row{"arcsine", 2},
                               Row{"wigner_semicircle", 2}, Row{"uniform", 2},
                               Row{"gaussian", 2}}) {
            const Spectrum s =
                Spectrum::named(row.name, row.name == std::string("bernoulli")
                                              ? 0.5
                                              : 0.0);
            const VarprepOptimum opt = optimize_alphas(s, row.p, vp.grid);
            csv << row.name << ',' << row.p << ',' << opt.max_abs << "\n";
        }
        write_manifest(st, "varprep", cfg);
        return 0;
    }

    const Spectrum s = vp.spectrum == "zsum"
                           ? Spectrum::zsum(vp.zsum_k, cfg.model.n)
                           : Spectrum::named(vp.spectrum, vp.param);
    const VarprepOptimum opt = optimize_alphas(s, vp.depth, vp.grid);
    {
        auto csv = open_out(st, "varprep_summary.csv");
        csv << "distribution,p,max_fidelity";
        for (int j = 0; j < vp.depth; ++j) csv << ",alpha" << j + 1;
        csv << "\n" << vp.spectrum << ',' << vp.depth << ',' << opt.max_abs;
        for (double a : opt.alphas) csv << ',' << a;
        csv << "\n";
    }
    if (vp.depth == 2) {
        // |F2| landscape over the angle grid, CSV + heatmap
        auto csv = open_out(st, "varprep_landscape.csv");
        csv << "alpha1,alpha2,abs_f2\n";
        std::vector<std::vector<double>> gridvals(
            vp.grid, std::vector<double>(vp.grid, 0.0));
        for (int r = 0; r < vp.grid; ++r) {
            const double a2 = 2.0 * kPi * r / vp.grid;
            for (int c = 0; c < vp.grid; ++c) {
                const double a1 = 2.0 * kPi * c / vp.grid;
                const double f = std::abs(fidelity_fp(s, {a1, a2}));
                gridvals[r][c] = f;
                csv << a1 << ',' << a2 << ',' << f << "\n";
            }
        }
        auto svg = open_out(st, "varprep_landscape.svg");
        plot::write_heatmap_svg(svg, {"|F2| landscape", "alpha1", "alpha2"},
                                0.0, 2.0 * kPi, 0.0, 2.0 * kPi, gridvals);
    }
    write_manifest(st, "varprep", cfg);
    return 0;
}

int cmd_check_symmetry(CliState& st) {
    const HamiltonianSpec h = hamiltonian_from_json(read_file(st.config_path));
    auto report = open_out(st, "symmetry_report.txt");
    const auto frame = find_phase_frame(h);
    std::ostringstream msg;
    if (!frame) {
        const auto rep = antisymmetry_report(h, PhaseFrame::trivial(h.num_qubits));
        msg << "frame: NONE\n"
            << "trivial-frame violation (sum |coeff| of symmetric terms): "
            << rep.max_violation << "\n";
    } else {
        msg << "frame:";
        for (int j = 0; j < h.num_qubits; ++j)
            msg << ' ' << (frame->rotated(j) ? "pi/2" : "0");
        msg << "\nbell pairs:";
        for (int sign : canonical_pair_signs(*frame))
            msg << ' ' << (sign > 0 ? "Phi+" : "Phi-");
        const auto rep = antisymmetry_report(h, *frame);
        msg << "\nviolation: " << rep.max_violation << "\n";
    }
    std::cout << msg.str();
    report << msg.str();
    write_manifest(st, "check-symmetry",
                   ExperimentConfig{});  // no experiment config involved
    return frame ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
    apply_thread_env();
    CLI::App app{std::string(kVersion) +
                 " - Bell-state protocol simulator for infinite-temperature "
                 "OTOCs"};
    app.require_subcommand(1);
    CliState st;

    auto add_common = [&](CLI::App* sub, bool with_sampling) {
        sub->add_option("--config", st.config_path, "config file (.toml/.json)")
            ->required();
        sub->add_option("--out", st.out_dir, "output directory");
        if (with_sampling) {
            st.seed.reset();
            st.shots.reset();
            sub->add_option("--seed", [&st](const CLI::results_t& r) {
                st.seed = std::stoull(r[0]);
                return true;
            }, "RNG seed override");
            sub->add_option("--shots", [&st](const CLI::results_t& r) {
                st.shots = std::stoll(r[0]);
                return true;
            }, "shots-per-point override (0 = exact only)");
        }
    };

    auto* otoc = app.add_subcommand("otoc", "time series of O, O', Obar");
    add_common(otoc, true);
    auto* noise = app.add_subcommand("noise", "imperfection-channel sweeps");
    add_common(noise, true);
    auto* varprep = app.add_subcommand("varprep",
                                       "variational W-state fidelities");
    add_common(varprep, false);
    auto* checksym = app.add_subcommand(
        "check-symmetry", "find an antisymmetric phase frame for a "
                          "Hamiltonian JSON file");
    add_common(checksym, false);

    CLI11_PARSE(app, argc, argv);
    try {
        if (otoc->parsed()) return cmd_otoc(st);
        if (noise->parsed()) return cmd_noise(st);
        if (varprep->parsed()) return cmd_varprep(st);
        if (checksym->parsed()) return cmd_check_symmetry(st);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
