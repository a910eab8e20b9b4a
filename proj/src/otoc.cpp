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

#include "otoclab/otoc.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <utility>

#include "otoclab/kernels.hpp"

namespace otoclab {

namespace {

constexpr std::size_t kDenseTraceLimit = 4096;  // 2^12 single-copy dimension

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

}  // namespace

OtocEngine::OtocEngine(const HamiltonianSpec& h, const PhaseFrame& frame)
    : n_(h.num_qubits), frame_(frame) {
    if (frame.size() != n_)
        throw std::invalid_argument("OtocEngine: frame size mismatch");
    if ((std::size_t{1} << n_) > kDenseTraceLimit)
        throw std::invalid_argument("OtocEngine: dense trace budget exceeded (n > 12)");
    antisym_ = antisymmetry_report(h, frame).holds;
    const Mat dense = dense_matrix(h, frame);
    const std::size_t d = std::size_t{1} << n_;

    // H conserves the excitation number iff every nonzero entry connects
    // basis states of equal popcount; then the eigensolve and all later
    // products split over the popcount sectors.
    bool conserved = true;
    for (std::size_t b = 0; conserved && b < d; ++b)
        for (std::size_t a = 0; a < d; ++a)
            if (std::abs(dense(a, b)) > 1e-12 &&
                std::popcount(a) != std::popcount(b)) {
                conserved = false;
                break;
            }
    if (conserved && n_ > 1) {
        sectors_.resize(n_ + 1);
        for (std::size_t x = 0; x < d; ++x)
            sectors_[std::popcount(x)].idx.push_back(static_cast<std::uint32_t>(x));
    } else {
        sectors_.resize(1);
        sectors_[0].idx.resize(d);
        for (std::size_t x = 0; x < d; ++x)
            sectors_[0].idx[x] = static_cast<std::uint32_t>(x);
    }
    for (auto& s : sectors_) {
        const Eigen::Index ds = static_cast<Eigen::Index>(s.idx.size());
        Mat block(ds, ds);
        for (Eigen::Index b = 0; b < ds; ++b)
            for (Eigen::Index a = 0; a < ds; ++a)
                block(a, b) = dense(s.idx[a], s.idx[b]);
        auto es = linalg::hermitian_eig(block);
        s.values = std::move(es.values);
        s.q = std::move(es.vectors);
    }

    // Assemble the full eigensystem (ascending eigenvalues) for callers.
    std::vector<std::pair<double, std::pair<std::size_t, Eigen::Index>>> order;
    order.reserve(d);
    for (std::size_t si = 0; si < sectors_.size(); ++si)
        for (Eigen::Index j = 0; j < sectors_[si].values.size(); ++j)
            order.push_back({sectors_[si].values[j], {si, j}});
    std::stable_sort(order.begin(), order.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    eig_.values.resize(d);
    eig_.vectors = Mat::Zero(d, d);
    for (std::size_t k = 0; k < d; ++k) {
        eig_.values[k] = order[k].first;
        const auto& s = sectors_[order[k].second.first];
        const Eigen::Index j = order[k].second.second;
        for (std::size_t a = 0; a < s.idx.size(); ++a)
            eig_.vectors(s.idx[a], k) = s.q(static_cast<Eigen::Index>(a), j);
    }
}

int OtocEngine::register_w_diag(const RVec& diag) {
    if (diag.size() != static_cast<Eigen::Index>(std::size_t{1} << n_))
        throw std::invalid_argument("register_w_diag: wrong length");
    if (diag.norm() == 0.0)
        throw std::invalid_argument("register_w_diag: zero operator");
    const int handle = next_handle_--;
    registered_[handle] = diag;
    return handle;
}

RVec OtocEngine::w_diag(int w) const {
    const std::size_t d = std::size_t{1} << n_;
    if (w == kIdentityW) return RVec::Ones(d);
    if (w >= 0) {
        if (w >= n_) throw std::invalid_argument("w_site out of range");
        RVec diag(d);
        for (std::size_t x = 0; x < d; ++x)
            diag[x] = (x >> w & 1) ? -1.0 : 1.0;
        return diag;
    }
    auto it = registered_.find(w);
    if (it == registered_.end())
        throw std::invalid_argument("unknown W handle");
    return it->second;
}

double OtocEngine::w_norm2(int w) const { return w_diag(w).squaredNorm(); }

const std::vector<Mat>& OtocEngine::g_blocks(int w) {
    auto it = g_cache_.find(w);
    if (it != g_cache_.end()) return it->second;
    const RVec full = w_diag(w);
    std::vector<Mat> blocks;
    blocks.reserve(sectors_.size());
    for (const auto& s : sectors_) {
        RVec diag(s.idx.size());
        for (std::size_t a = 0; a < s.idx.size(); ++a) diag[a] = full[s.idx[a]];
        const Mat scaled = diag.asDiagonal() * s.q;
        blocks.push_back(linalg::mul(s.q.adjoint(), scaled));
    }
    return g_cache_.emplace(w, std::move(blocks)).first->second;
}

const std::vector<Mat>& OtocEngine::p_blocks(int w) {
    auto it = p_cache_.find(w);
    if (it != p_cache_.end()) return it->second;
    const RVec full = w_diag(w) / std::sqrt(w_norm2(w));
    std::vector<Mat> blocks;
    blocks.reserve(sectors_.size());
    for (const auto& s : sectors_) {
        RVec diag(s.idx.size());
        for (std::size_t a = 0; a < s.idx.size(); ++a) diag[a] = full[s.idx[a]];
        const Mat scaled = diag.asDiagonal() * s.q.conjugate();
        blocks.push_back(linalg::mul(s.q.adjoint(), scaled));
    }
    return p_cache_.emplace(w, std::move(blocks)).first->second;
}

// R(t) = e^{-iHt} W e^{iHt} = Q (E G E^*) Q^+ per sector, E = diag(e^{-i l t}).
const Mat& OtocEngine::heisenberg_w(int w, double t) {
    if (r_valid_ && r_w_ == w && r_t_ == t) return r_cache_;
    const auto& gb = g_blocks(w);
    const std::size_t d = std::size_t{1} << n_;
    r_cache_ = Mat::Zero(d, d);
    for (std::size_t si = 0; si < sectors_.size(); ++si) {
        const auto& s = sectors_[si];
        const Eigen::Index ds = static_cast<Eigen::Index>(s.idx.size());
        Mat gt(ds, ds);
        for (Eigen::Index b = 0; b < ds; ++b)
            for (Eigen::Index a = 0; a < ds; ++a)
                gt(a, b) = gb[si](a, b) *
                           std::exp(Complex{0.0, -(s.values[a] - s.values[b]) * t});
        const Mat rs = linalg::mul(s.q, linalg::mul(gt, s.q.adjoint()));
        for (Eigen::Index b = 0; b < ds; ++b)
            for (Eigen::Index a = 0; a < ds; ++a)
                r_cache_(s.idx[a], s.idx[b]) = rs(a, b);
    }
    r_w_ = w;
    r_t_ = t;
    r_valid_ = true;
    return r_cache_;
}

LocalObservable OtocEngine::v_observable(int v_site) const {
    return pauli_observable('X', v_site, frame_);
}

double OtocEngine::exact(int w, int v_site, double t) {
    if (v_site < 0 || v_site >= n_)
        throw std::invalid_argument("v_site out of range");
    const Mat& r = heisenberg_w(w, t);
    const Mat2 vf = pauli_in_frame('X', frame_.rotated(v_site));
    const Complex tr = kernels::trace_rvrv(r, v_site, vf);
    const double val = tr.real() / w_norm2(w);
    if (std::abs(tr.imag()) / w_norm2(w) > 1e-9)
        throw std::runtime_error("otoc_exact_trace: non-real trace value");
    return val;
}

StateVector OtocEngine::protocol_state(int w, double t) {
    const auto& pb = p_blocks(w);
    const std::size_t d = std::size_t{1} << n_;
    // M(t) = U(t) M0 U(t)^T = Q (E P E) Q^T per sector.
    Mat m = Mat::Zero(d, d);
    for (std::size_t si = 0; si < sectors_.size(); ++si) {
        const auto& s = sectors_[si];
        const Eigen::Index ds = static_cast<Eigen::Index>(s.idx.size());
        Mat pt(ds, ds);
        for (Eigen::Index b = 0; b < ds; ++b)
            for (Eigen::Index a = 0; a < ds; ++a)
                pt(a, b) = pb[si](a, b) *
                           std::exp(Complex{0.0, -(s.values[a] + s.values[b]) * t});
        const Mat ms = linalg::mul(linalg::mul(s.q, pt), s.q.transpose());
        for (Eigen::Index b = 0; b < ds; ++b)
            for (Eigen::Index a = 0; a < ds; ++a)
                m(s.idx[a], s.idx[b]) = ms(a, b);
    }
    StateVector state;
    state.num_qubits = 2 * n_;
    state.frame = frame_.doubled();
    state.amps = Vec::Zero(std::size_t{1} << state.num_qubits);
    scatter_matrix(m, state);
    return state;
}

StateVector OtocEngine::initial_state(int w) { return protocol_state(w, 0.0); }

double OtocEngine::protocol(int w, int v_site, double t) {
    const StateVector state = protocol_state(w, t);
    return expectation_vvt(state, v_observable(v_site));
}

double otoc_rescaled(double estimate, double baseline) {
    if (std::abs(baseline) <= 1e-6)
        throw std::runtime_error("otoc_rescaled: baseline too close to zero");
    return estimate / baseline;
}

double otoc_exact_trace(const HamiltonianSpec& h, const PhaseFrame& frame,
                        int w_site, int v_site, double t) {
    return OtocEngine(h, frame).exact(w_site, v_site, t);
}

double otoc_protocol(const HamiltonianSpec& h, const PhaseFrame& frame,
                     int w_site, int v_site, double t) {
    return OtocEngine(h, frame).protocol(w_site, v_site, t);
}

double otoc_baseline(const HamiltonianSpec& h, const PhaseFrame& frame,
                     int v_site, double t) {
    return OtocEngine(h, frame).baseline(v_site, t);
}

std::vector<double> time_grid(double start, double stop, int points) {
    if (points < 0) throw std::invalid_argument("time_grid: negative point count");
    std::vector<double> ts;
    ts.reserve(points);
    if (points == 1) {
        ts.push_back(start);
        return ts;
    }
    for (int i = 0; i < points; ++i)
        ts.push_back(start + (stop - start) * i / (points - 1));
    return ts;
}

OtocSeries run_series(const SeriesConfig& cfg) {
    PhaseFrame frame;
    if (cfg.frame) {
        frame = *cfg.frame;
    } else {
        auto found = find_phase_frame(cfg.h);
        if (!found)
            throw std::runtime_error("run_series: no antisymmetric frame exists; "
                                     "pass one explicitly to force a run");
        frame = *found;
    }
    for (std::size_t i = 1; i < cfg.times.size(); ++i)
        if (cfg.times[i] <= cfg.times[i - 1])
            throw std::invalid_argument("run_series: time grid must be increasing");

    OtocEngine engine(cfg.h, frame);
    const int w = cfg.w_diag ? engine.register_w_diag(*cfg.w_diag) : cfg.w_site;
    const LocalObservable v = engine.v_observable(cfg.v_site);

    OtocSeries series;
    series.model = cfg.model_name;
    series.num_qubits = cfg.h.num_qubits;
    series.w_site = cfg.w_diag ? -1 : cfg.w_site;
    series.v_site = cfg.v_site;
    series.antisymmetric = engine.antisymmetric();

    for (std::size_t i = 0; i < cfg.times.size(); ++i) {
        OtocPoint pt;
        pt.t = cfg.times[i];
        pt.exact = engine.exact(w, cfg.v_site, pt.t);
        const StateVector state = engine.protocol_state(w, pt.t);
        pt.protocol = expectation_vvt(state, v);
        pt.baseline = engine.baseline(cfg.v_site, pt.t);
        double estimate = pt.protocol;
        if (cfg.shots > 0) {
            const std::uint64_t point_seed = derive_seed(cfg.seed, i);
            const SampleResult sr = sample_vvt(state, v, cfg.shots, point_seed);
            pt.sampled = SampledPoint{sr.estimate, sr.stderr_est, cfg.shots, point_seed};
            estimate = sr.estimate;
        }
        pt.rescaled = otoc_rescaled(estimate, pt.baseline);
        series.points.push_back(pt);
    }
    return series;
}

void write_series_csv(const OtocSeries& s, std::ostream& out) {
    const bool noisy = !s.channel.empty();
    out << "t,exact,protocol,baseline,sampled_mean,sampled_stderr,rescaled,"
           "n_shots,seed";
    if (noisy) out << ",channel,strength";
    out << "\n";
    for (const auto& p : s.points) {
        out << fmt(p.t) << ',' << fmt(p.exact) << ',' << fmt(p.protocol) << ','
            << fmt(p.baseline) << ',';
        if (p.sampled)
            out << fmt(p.sampled->estimate) << ',' << fmt(p.sampled->stderr_est)
                << ',' << fmt(p.rescaled) << ',' << p.sampled->shots << ','
                << p.sampled->seed;
        else
            out << ",," << fmt(p.rescaled) << ",0,0";
        if (noisy) out << ',' << s.channel << ',' << fmt(s.strength);
        out << "\n";
    }
}

}  // namespace otoclab
