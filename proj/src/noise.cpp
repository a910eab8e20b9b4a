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

#include "otoclab/noise.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "otoclab/evolution.hpp"
#include "otoclab/linalg.hpp"

namespace otoclab {

std::string channel_name(Channel c) {
    switch (c) {
        case Channel::none: return "none";
        case Channel::readout: return "readout";
        case Channel::imperfect_bell: return "imperfect_bell";
        case Channel::symmetry_breaking: return "symmetry_breaking";
        case Channel::unequal_hamiltonians: return "unequal_hamiltonians";
        case Channel::intercopy_coupling: return "intercopy_coupling";
        case Channel::spontaneous_emission: return "spontaneous_emission";
        case Channel::depolarizing: return "depolarizing";
    }
    throw std::invalid_argument("unknown channel");
}

Channel channel_from_name(const std::string& name) {
    for (Channel c : {Channel::none, Channel::readout, Channel::imperfect_bell,
                      Channel::symmetry_breaking, Channel::unequal_hamiltonians,
                      Channel::intercopy_coupling, Channel::spontaneous_emission,
                      Channel::depolarizing})
        if (channel_name(c) == name) return c;
    throw std::invalid_argument("unknown noise channel '" + name + "'");
}

void NoiseConfig::validate() const {
    if (!std::isfinite(strength))
        throw std::invalid_argument("noise strength must be finite");
    // Coherent perturbations (symmetry_breaking, unequal_hamiltonians,
    // intercopy_coupling) accept signed eps; the stochastic channels do not.
    const bool coherent = kind == Channel::symmetry_breaking ||
                          kind == Channel::unequal_hamiltonians ||
                          kind == Channel::intercopy_coupling;
    if (!coherent && strength < 0.0)
        throw std::invalid_argument("noise strength must be >= 0");
    if (kind == Channel::readout && strength > 0.5)
        throw std::invalid_argument("readout error x must lie in [0, 0.5]");
    if (kind == Channel::imperfect_bell && strength > 1.0)
        throw std::invalid_argument("Bell infidelity delta must lie in [0, 1]");
    if (kind == Channel::imperfect_bell && draws < 1)
        throw std::invalid_argument("imperfect_bell needs draws >= 1");
    if (kind == Channel::spontaneous_emission && lindblad_dt <= 0.0)
        throw std::invalid_argument("lindblad_dt must be > 0");
}

double readout_factor(double x) { return (1.0 - 2.0 * x) * (1.0 - 2.0 * x); }

namespace {

SampleResult result_from_counts(const std::array<std::int64_t, 4>& counts,
                                const std::array<double, 2>& evs) {
    SampleResult r;
    r.counts = counts;
    r.eigenvalues = evs;
    std::int64_t total = 0;
    double sum = 0.0, sum2 = 0.0;
    for (int k = 0; k < 4; ++k) {
        const double prod = evs[k >> 1] * evs[k & 1];
        total += counts[k];
        sum += prod * counts[k];
        sum2 += prod * prod * counts[k];
    }
    r.estimate = sum / double(total);
    if (total > 1) {
        const double var = std::max(
            0.0, (sum2 - double(total) * r.estimate * r.estimate) / double(total - 1));
        r.stderr_est = std::sqrt(var / double(total));
    }
    return r;
}

// Multinomial split of n trials over `probs` via sequential binomials.
std::array<std::int64_t, 4> multinomial(std::int64_t n,
                                        const std::array<double, 4>& probs,
                                        std::mt19937_64& rng) {
    std::array<std::int64_t, 4> out{};
    double rest = 1.0;
    std::int64_t left = n;
    for (int k = 0; k < 3 && left > 0; ++k) {
        const double p = std::min(1.0, std::max(0.0, probs[k] / rest));
        std::binomial_distribution<std::int64_t> bin(left, p);
        out[k] = bin(rng);
        left -= out[k];
        rest -= probs[k];
        if (rest <= 0.0) break;
    }
    out[3] += left;
    return out;
}

SampleResult sample_from_probs(const std::array<double, 4>& prob,
                               const std::array<double, 2>& evs,
                               std::int64_t shots, std::uint64_t seed) {
    if (shots < 1) throw std::invalid_argument("shots must be >= 1");
    double cdf[4];
    double acc = 0.0;
    for (int k = 0; k < 4; ++k) cdf[k] = (acc += prob[k]);
    cdf[3] = std::max(cdf[3], 1.0 + 1e-15);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    std::array<std::int64_t, 4> counts{};
    for (std::int64_t s = 0; s < shots; ++s) {
        const double x = uni(rng);
        int k = 0;
        while (k < 3 && x >= cdf[k]) ++k;
        ++counts[k];
    }
    return result_from_counts(counts, evs);
}

}  // namespace

SampleResult apply_readout(const SampleResult& r, double x, std::uint64_t seed) {
    if (x < 0.0 || x > 0.5)
        throw std::invalid_argument("apply_readout: x must lie in [0, 0.5]");
    if (x == 0.0) return r;
    std::mt19937_64 rng(seed);
    // Each shot's two records flip independently: joint flip-pattern
    // probabilities over (flip1, flip2).
    const std::array<double, 4> flip_probs = {(1 - x) * (1 - x), (1 - x) * x,
                                              x * (1 - x), x * x};
    std::array<std::int64_t, 4> out{};
    for (int k = 0; k < 4; ++k) {
        if (r.counts[k] == 0) continue;
        const auto split = multinomial(r.counts[k], flip_probs, rng);
        for (int f = 0; f < 4; ++f) out[k ^ f] += split[f];
    }
    return result_from_counts(out, r.eigenvalues);
}

ImperfectBellSampler::ImperfectBellSampler(int n, const PhaseFrame& frame,
                                           std::vector<int> pair_signs,
                                           double delta)
    : n_(n), frame_(frame), pair_signs_(std::move(pair_signs)), delta_(delta) {
    if (frame_.size() != n_ || static_cast<int>(pair_signs_.size()) != n_)
        throw std::invalid_argument("ImperfectBellSampler: size mismatch");
    if (delta_ < 0.0 || delta_ > 1.0)
        throw std::invalid_argument("ImperfectBellSampler: delta outside [0, 1]");
}

namespace {

// Frame-coordinate amplitudes of the four computational Bell states on one
// site pair (index b1 + 2*b2, b1 = copy-1 bit). kind: 0 Phi+, 1 Phi-,
// 2 Psi+, 3 Psi-.
std::array<Complex, 4> bell_pair_amps(int kind, bool rotated) {
    const double s = 1.0 / std::sqrt(2.0);
    // On a rotated pair the frame basis vector for |11> is e^{2i theta}|11>
    // with theta = pi/2, so the |11> coefficient picks up a -1; |01>/|10>
    // pick up e^{i pi/2} = i.
    const Complex d = rotated ? Complex{-s, 0.0} : Complex{s, 0.0};
    const Complex o = rotated ? Complex{0.0, s} : Complex{s, 0.0};
    switch (kind) {
        case 0: return {s, 0.0, 0.0, d};
        case 1: return {s, 0.0, 0.0, -d};
        case 2: return {0.0, o, o, 0.0};
        case 3: return {0.0, -o, o, 0.0};
    }
    throw std::invalid_argument("bell_pair_amps: bad kind");
}

StateVector assemble_pairs(int n, const PhaseFrame& frame,
                           const std::vector<std::array<Complex, 4>>& pairs) {
    StateVector state;
    state.num_qubits = 2 * n;
    state.frame = frame.doubled();
    state.amps = Vec::Zero(std::size_t{1} << (2 * n));
    state.amps[0] = 1.0;
    std::size_t filled = 1;  // amplitudes of the first `j` pairs live in [0, filled)
    for (int j = 0; j < n; ++j) {
        for (std::size_t x = filled; x-- > 0;) {
            const Complex base = state.amps[x];
            if (base == Complex{0.0, 0.0}) continue;
            state.amps[x] = base * pairs[j][0];
            for (int s = 1; s < 4; ++s)
                state.amps[x | (static_cast<std::size_t>(s) << (2 * j))] =
                    base * pairs[j][s];
        }
        filled <<= 2;
    }
    return state;
}

}  // namespace

StateVector ImperfectBellSampler::ideal() const {
    std::vector<std::array<Complex, 4>> pairs(n_);
    for (int j = 0; j < n_; ++j)
        pairs[j] = bell_pair_amps(pair_signs_[j] > 0 ? 0 : 1, frame_.rotated(j));
    return assemble_pairs(n_, frame_, pairs);
}

StateVector ImperfectBellSampler::draw(std::uint64_t seed) const {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    std::uniform_int_distribution<int> pick(0, 3);
    std::vector<std::array<Complex, 4>> pairs(n_);
    for (int j = 0; j < n_; ++j) {
        int kind = pair_signs_[j] > 0 ? 0 : 1;
        if (uni(rng) < delta_) kind = pick(rng);
        pairs[j] = bell_pair_amps(kind, frame_.rotated(j));
    }
    return assemble_pairs(n_, frame_, pairs);
}

namespace {

PhaseFrame resolve_frame(const SeriesConfig& base) {
    if (base.frame) return *base.frame;
    auto found = find_phase_frame(base.h);
    if (!found)
        throw std::runtime_error("channel_series: no antisymmetric frame exists");
    return *found;
}

OtocSeries series_header(const NoiseConfig& noise, const SeriesConfig& base) {
    OtocSeries s;
    s.model = base.model_name;
    s.num_qubits = base.h.num_qubits;
    s.w_site = base.w_site;
    s.v_site = base.v_site;
    s.channel = channel_name(noise.kind);
    s.strength = noise.strength;
    return s;
}

// Analytic global-rescaling channels: protocol and baseline both acquire
// factor(t), the ratio cancels, and sampling draws from the mixed
// distribution p' = f p + (1 - f)/4.
OtocSeries rescaling_series(const NoiseConfig& noise, const SeriesConfig& base,
                            const PhaseFrame& frame, bool time_dependent) {
    OtocSeries series = series_header(noise, base);
    OtocEngine engine(base.h, frame);
    series.antisymmetric = engine.antisymmetric();
    const int w = base.w_diag ? engine.register_w_diag(*base.w_diag) : base.w_site;
    const LocalObservable v = engine.v_observable(base.v_site);
    for (std::size_t i = 0; i < base.times.size(); ++i) {
        OtocPoint pt;
        pt.t = base.times[i];
        const double f = time_dependent ? std::exp(-noise.strength * pt.t)
                                        : readout_factor(noise.strength);
        pt.exact = engine.exact(w, base.v_site, pt.t);
        const StateVector state = engine.protocol_state(w, pt.t);
        const double ideal_protocol = expectation_vvt(state, v);
        pt.protocol = f * ideal_protocol;
        pt.baseline = f * engine.baseline(base.v_site, pt.t);
        double estimate = pt.protocol;
        if (base.shots > 0) {
            const std::uint64_t point_seed = derive_seed(base.seed, i);
            SampleResult sr;
            if (time_dependent) {
                auto prob = vvt_probabilities(state, v);
                for (auto& p : prob) p = f * p + (1.0 - f) * 0.25;
                Eigen::SelfAdjointEigenSolver<Mat2> es(v.matrix);
                sr = sample_from_probs(prob,
                                       {es.eigenvalues()[1], es.eigenvalues()[0]},
                                       base.shots, point_seed);
            } else {
                sr = sample_vvt(state, v, base.shots, point_seed);
                sr = apply_readout(sr, noise.strength, derive_seed(point_seed, 1));
            }
            pt.sampled = SampledPoint{sr.estimate, sr.stderr_est, base.shots,
                                      point_seed};
            estimate = sr.estimate;
        }
        pt.rescaled = otoc_rescaled(estimate, pt.baseline);
        series.points.push_back(pt);
    }
    return series;
}

OtocSeries coherent_series(const NoiseConfig& noise, const SeriesConfig& base,
                           const PhaseFrame& frame) {
    OtocSeries series = series_header(noise, base);
    OtocEngine ideal(base.h, frame);
    series.antisymmetric = ideal.antisymmetric();
    const int w_ideal =
        base.w_diag ? ideal.register_w_diag(*base.w_diag) : base.w_site;
    const double eps = noise.strength;

    if (noise.kind == Channel::symmetry_breaking) {
        // H_eps = H_AB + eps (H_AA + H_BB); the base model must be the
        // sublattice XY chain for the intra-sublattice parts to mean anything.
        HamiltonianSpec h_eps = base.h;
        h_eps += build_xy_chain(base.h.num_qubits, base.h.coupling, ChainPart::AA)
                     .scaled(eps);
        h_eps += build_xy_chain(base.h.num_qubits, base.h.coupling, ChainPart::BB)
                     .scaled(eps);
        OtocEngine noisy(h_eps, frame);
        const int w = base.w_diag ? noisy.register_w_diag(*base.w_diag) : base.w_site;
        for (double t : base.times) {
            OtocPoint pt;
            pt.t = t;
            pt.exact = ideal.exact(w_ideal, base.v_site, t);
            pt.protocol = noisy.protocol(w, base.v_site, t);
            pt.baseline = noisy.baseline(base.v_site, t);
            pt.rescaled = otoc_rescaled(pt.protocol, pt.baseline);
            series.points.push_back(pt);
        }
        return series;
    }

    if (noise.kind == Channel::unequal_hamiltonians) {
        const Propagator prop = make_propagator(base.h, frame);
        const LocalObservable v = ideal.v_observable(base.v_site);
        for (double t : base.times) {
            OtocPoint pt;
            pt.t = t;
            pt.exact = ideal.exact(w_ideal, base.v_site, t);
            StateVector state = ideal.initial_state(w_ideal);
            evolve_doubled_product(state, prop, (1.0 + eps) * t, prop,
                                   (1.0 - eps) * t);
            pt.protocol = expectation_vvt(state, v);
            StateVector bell = ideal.initial_state(OtocEngine::kIdentityW);
            evolve_doubled_product(bell, prop, (1.0 + eps) * t, prop,
                                   (1.0 - eps) * t);
            pt.baseline = expectation_vvt(bell, v);
            pt.rescaled = otoc_rescaled(pt.protocol, pt.baseline);
            series.points.push_back(pt);
        }
        return series;
    }

    // intercopy_coupling: both copies plus an eps XX+YY bridge, evolved as
    // one 2n-qubit register (RK4 beyond the dense-eigendecomposition limit),
    // marching incrementally along the grid.
    HamiltonianSpec joint = on_doubled_register(base.h, 0);
    joint += on_doubled_register(base.h, 1);
    joint += build_intercopy_coupling(base.h.num_qubits, eps * base.h.coupling);
    joint.num_qubits = 2 * base.h.num_qubits;
    const Propagator prop = make_propagator(joint, frame.doubled());
    const LocalObservable v = ideal.v_observable(base.v_site);
    StateVector state = ideal.initial_state(w_ideal);
    StateVector bell = ideal.initial_state(OtocEngine::kIdentityW);
    // A 1e-7 budget keeps the integration error two orders below the
    // smallest eps^2 signal probed while integrating ~3x faster than the
    // default; the +-eps mirror symmetry is exact at any step size.
    const double dt =
        rk4_suggested_dt(prop, base.times.empty() ? 0.0 : base.times.back(), 1e-7);
    double now = 0.0;
    for (double t : base.times) {
        evolve_full(state, prop, t - now, dt);
        evolve_full(bell, prop, t - now, dt);
        now = t;
        OtocPoint pt;
        pt.t = t;
        pt.exact = ideal.exact(w_ideal, base.v_site, t);
        pt.protocol = expectation_vvt(state, v);
        pt.baseline = expectation_vvt(bell, v);
        pt.rescaled = otoc_rescaled(pt.protocol, pt.baseline);
        series.points.push_back(pt);
    }
    return series;
}

OtocSeries bell_ensemble_series(const NoiseConfig& noise,
                                const SeriesConfig& base,
                                const PhaseFrame& frame) {
    OtocSeries series = series_header(noise, base);
    OtocEngine ideal(base.h, frame);
    series.antisymmetric = ideal.antisymmetric();
    const int n = base.h.num_qubits;
    const Propagator prop = make_propagator(base.h, frame);
    const LocalObservable v = ideal.v_observable(base.v_site);
    const Mat2 z = pauli_in_frame('Z', false);
    ImperfectBellSampler sampler(n, frame, canonical_pair_signs(frame),
                                 noise.strength);

    // Draw the ensemble once; every time point reuses the same pure states.
    std::vector<StateVector> draws;
    draws.reserve(noise.draws);
    for (int d = 0; d < noise.draws; ++d)
        draws.push_back(sampler.draw(derive_seed(base.seed, d)));

    for (std::size_t i = 0; i < base.times.size(); ++i) {
        const double t = base.times[i];
        OtocPoint pt;
        pt.t = t;
        pt.exact = ideal.exact(base.w_site, base.v_site, t);
        double sum_w = 0.0, sum2_w = 0.0, sum_b = 0.0;
        for (const auto& drawn : draws) {
            StateVector with_w = drawn;
            apply_local_unitary(with_w, bit_of(base.w_site, 0), z);
            evolve_doubled_product(with_w, prop, t);
            const double ow = expectation_vvt(with_w, v);
            sum_w += ow;
            sum2_w += ow * ow;
            StateVector plain = drawn;
            evolve_doubled_product(plain, prop, t);
            sum_b += expectation_vvt(plain, v);
        }
        const double m = noise.draws;
        pt.protocol = sum_w / m;
        pt.baseline = sum_b / m;
        double se = 0.0;
        if (noise.draws > 1) {
            const double var =
                std::max(0.0, (sum2_w - m * pt.protocol * pt.protocol) / (m - 1.0));
            se = std::sqrt(var / m);
        }
        pt.sampled = SampledPoint{pt.protocol, se,
                                  static_cast<std::int64_t>(noise.draws), base.seed};
        pt.rescaled = otoc_rescaled(pt.protocol, pt.baseline);
        series.points.push_back(pt);
    }
    return series;
}

OtocSeries lindblad_series(const NoiseConfig& noise, const SeriesConfig& base,
                           const PhaseFrame& frame) {
    OtocSeries series = series_header(noise, base);
    OtocEngine ideal(base.h, frame);
    series.antisymmetric = ideal.antisymmetric();
    const int w = base.w_diag ? ideal.register_w_diag(*base.w_diag) : base.w_site;
    HamiltonianSpec joint = on_doubled_register(base.h, 0);
    joint += on_doubled_register(base.h, 1);
    // Dense H is rebuilt from the terms inside lindblad_evolve; skip the
    // eigendecomposition.
    const Propagator prop = make_propagator(joint, frame.doubled(), 0);
    const LocalObservable v = ideal.v_observable(base.v_site);
    LindbladOptions opt;
    opt.dt = noise.lindblad_dt;
    DensityMatrix rho_w = pure_density(ideal.initial_state(w));
    DensityMatrix rho_b = pure_density(ideal.initial_state(OtocEngine::kIdentityW));
    double now = 0.0;
    for (double t : base.times) {
        lindblad_evolve(rho_w, prop, noise.strength, t - now, opt);
        lindblad_evolve(rho_b, prop, noise.strength, t - now, opt);
        now = t;
        OtocPoint pt;
        pt.t = t;
        pt.exact = ideal.exact(w, base.v_site, t);
        pt.protocol = expectation_vvt(rho_w, v);
        pt.baseline = expectation_vvt(rho_b, v);
        pt.rescaled = otoc_rescaled(pt.protocol, pt.baseline);
        series.points.push_back(pt);
    }
    return series;
}

}  // namespace

OtocSeries channel_series(const NoiseConfig& noise, const SeriesConfig& base) {
    noise.validate();
    if (noise.kind == Channel::none) return run_series(base);
    const PhaseFrame frame = resolve_frame(base);
    switch (noise.kind) {
        case Channel::readout:
            return rescaling_series(noise, base, frame, false);
        case Channel::depolarizing:
            return rescaling_series(noise, base, frame, true);
        case Channel::symmetry_breaking:
        case Channel::unequal_hamiltonians:
        case Channel::intercopy_coupling:
            return coherent_series(noise, base, frame);
        case Channel::imperfect_bell:
            return bell_ensemble_series(noise, base, frame);
        case Channel::spontaneous_emission:
            return lindblad_series(noise, base, frame);
        default:
            throw std::invalid_argument("channel_series: unsupported channel");
    }
}

double scaling_exponent(const std::vector<double>& strengths,
                        const std::vector<double>& values, double ideal) {
    if (strengths.size() != values.size() || strengths.size() < 2)
        throw std::invalid_argument("scaling_exponent: need matched lists (>= 2)");
    std::vector<double> lx, ly;
    for (std::size_t i = 0; i < strengths.size(); ++i) {
        const double diff = std::abs(values[i] - ideal);
        if (diff < 1e-12) continue;
        lx.push_back(std::log(strengths[i]));
        ly.push_back(std::log(diff));
    }
    if (lx.size() < 2)
        throw std::runtime_error("scaling_exponent: differences below 1e-12, "
                                 "fit is degenerate");
    return linalg::fit_slope(lx, ly);
}

}  // namespace otoclab
