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
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "otoclab/common.hpp"
#include "otoclab/evolution.hpp"
#include "otoclab/linalg.hpp"
#include "otoclab/pauli.hpp"
#include "otoclab/state.hpp"

namespace otoclab {

// One time point of a series. `exact` is the trace oracle, `protocol` the
// Bell-circuit value, `baseline` the no-W run O', and `rescaled` the ratio
// estimate / baseline (estimate = sampled mean when shots were taken,
// otherwise the protocol value).
struct SampledPoint {
    double estimate = 0.0;
    double stderr_est = 0.0;
    std::int64_t shots = 0;
    std::uint64_t seed = 0;
};

struct OtocPoint {
    double t = 0.0;
    double exact = 0.0;
    double protocol = 0.0;
    double baseline = 0.0;
    std::optional<SampledPoint> sampled;
    double rescaled = 0.0;
};

struct OtocSeries {
    std::string model;
    int num_qubits = 0;
    int w_site = 0;
    int v_site = 0;
    std::string channel;      // empty when noiseless
    double strength = 0.0;
    bool antisymmetric = true;  // warning flag when the frame identity fails
    std::vector<OtocPoint> points;
};

// Both evaluation paths for W = sigma^z_i (or any computational-basis
// diagonal W), V = sigma^x_j, sharing one eigendecomposition of H in the
// working frame. When H conserves the excitation number (e.g. an XY chain)
// the eigensolve and every per-time-point product run block-by-block over
// the popcount sectors, which cuts the cubic cost by more than an order of
// magnitude; otherwise a single sector spans the whole space. The evolved
// Heisenberg operator R(t) is cached so all V sites at one time reuse it.
class OtocEngine {
  public:
    static constexpr int kIdentityW = -1;  // handle of W = identity (baseline)

    OtocEngine(const HamiltonianSpec& h, const PhaseFrame& frame);

    // Registers a diagonal W (entries over bit strings, computational
    // basis); returns a handle usable wherever a w_site is expected.
    int register_w_diag(const RVec& diag);

    // (1/Tr(W W^+)) Re Tr(W^+ V(t) W V(t)), V(t) = e^{iHt} V e^{-iHt}.
    double exact(int w, int v_site, double t);

    // <W12(t)| V x V^T |W12(t)> via the doubled-register pipeline.
    double protocol(int w, int v_site, double t);
    double baseline(int v_site, double t) { return protocol(kIdentityW, v_site, t); }

    // The evolved doubled-register state itself (for sampling / noise).
    StateVector protocol_state(int w, double t);
    // Initial |W12> before evolution.
    StateVector initial_state(int w);

    int num_qubits() const { return n_; }
    const PhaseFrame& frame() const { return frame_; }
    bool antisymmetric() const { return antisym_; }
    const linalg::Eigensystem& eig() const { return eig_; }
    LocalObservable v_observable(int v_site) const;

  private:
    // Eigendecomposition of H restricted to one excitation-number sector (a
    // single sector covering the whole space when H does not conserve it).
    struct Sector {
        std::vector<std::uint32_t> idx;  // basis states in this sector
        RVec values;                     // eigenvalues of the block
        Mat q;                           // eigenvectors of the block
    };

    const std::vector<Mat>& g_blocks(int w);   // Q^+ W Q per sector, cached
    const std::vector<Mat>& p_blocks(int w);   // Q^+ M0 conj(Q) per sector, cached
    const Mat& heisenberg_w(int w, double t);  // R(t), cached for the last (w, t)
    RVec w_diag(int w) const;    // diagonal entries of W (frame == comp.)
    double w_norm2(int w) const; // Tr(W W^+)

    int n_ = 0;
    PhaseFrame frame_;
    bool antisym_ = true;
    linalg::Eigensystem eig_;
    std::vector<Sector> sectors_;
    std::map<int, RVec> registered_;
    std::map<int, std::vector<Mat>> g_cache_;
    std::map<int, std::vector<Mat>> p_cache_;
    Mat r_cache_;
    int r_w_ = 0;
    double r_t_ = 0.0;
    bool r_valid_ = false;
    int next_handle_ = -2;
};

// estimate / baseline; throws when |baseline| <= 1e-6 (result undefined).
double otoc_rescaled(double estimate, double baseline);

// Convenience one-shot wrappers around a throwaway engine.
double otoc_exact_trace(const HamiltonianSpec& h, const PhaseFrame& frame,
                        int w_site, int v_site, double t);
double otoc_protocol(const HamiltonianSpec& h, const PhaseFrame& frame,
                     int w_site, int v_site, double t);
double otoc_baseline(const HamiltonianSpec& h, const PhaseFrame& frame,
                     int v_site, double t);

struct SeriesConfig {
    HamiltonianSpec h;
    std::optional<PhaseFrame> frame;  // default: find_phase_frame(h)
    int w_site = 0;
    int v_site = 0;
    std::optional<RVec> w_diag;       // overrides w_site when present
    std::vector<double> times;        // strictly increasing
    std::int64_t shots = 0;           // 0 -> exact-only
    std::uint64_t seed = 0;
    std::string model_name;
};

std::vector<double> time_grid(double start, double stop, int points);

OtocSeries run_series(const SeriesConfig& cfg);

// CSV with header t,exact,protocol,baseline,sampled_mean,sampled_stderr,
// rescaled,n_shots,seed (+ channel,strength when a channel is set).
void write_series_csv(const OtocSeries& s, std::ostream& out);

}  // namespace otoclab
