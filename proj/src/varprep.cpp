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

#include "otoclab/varprep.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

namespace otoclab {

namespace {

double binom(int n, int k) {
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

// Even moments E[w^{2m}] of the three symmetric analytic distributions,
// used for cancellation-free small-argument series.
double even_moment_uniform(int m) { return 1.0 / (2 * m + 1); }
double even_moment_arcsine(int m) { return binom(2 * m, m) / std::pow(4.0, m); }
double even_moment_wigner(int m) {
    return binom(2 * m, m) / ((m + 1) * std::pow(4.0, m));
}

using MomentFn = double (*)(int);

double series_phi(MomentFn mom, double a) {
    // sum_m (-1)^m a^{2m} E[w^{2m}] / (2m)!
    double sum = 0.0, term = 1.0;
    for (int m = 0; m < 24; ++m) {
        sum += term * mom(m);
        term *= -a * a / ((2 * m + 1) * (2 * m + 2));
        if (std::abs(term) < 1e-18) break;
    }
    return sum;
}

double series_m1_imag(MomentFn mom, double a) {
    // E[w sin(aw)] = sum_m (-1)^m a^{2m+1} E[w^{2m+2}] / (2m+1)!
    double sum = 0.0, term = a;
    for (int m = 0; m < 24; ++m) {
        sum += term * mom(m + 1);
        term *= -a * a / ((2 * m + 2) * (2 * m + 3));
        if (std::abs(term) < 1e-18) break;
    }
    return sum;
}

}  // namespace

Spectrum Spectrum::discrete(std::vector<Level> levels) {
    if (levels.empty())
        throw std::invalid_argument("Spectrum::discrete: no levels");
    double total = 0.0;
    for (const auto& l : levels) {
        if (l.degeneracy <= 0.0)
            throw std::invalid_argument("Spectrum::discrete: degeneracy <= 0");
        total += l.degeneracy;
    }
    Spectrum s;
    s.levels_ = std::move(levels);
    for (auto& l : s.levels_) l.degeneracy /= total;  // store as weights
    return s;
}

Spectrum Spectrum::zsum(int k, int n) {
    if (k < 1 || k > n) throw std::invalid_argument("Spectrum::zsum: need 1 <= k <= n");
    std::vector<Level> levels;
    for (int m = 0; m <= k; ++m)
        levels.push_back({double(k - 2 * m), binom(k, m) * std::pow(2.0, n - k)});
    return discrete(std::move(levels));
}

Spectrum Spectrum::named(const std::string& name, double param) {
    Spectrum s;
    s.name_ = name;
    s.param_ = param;
    if (name == "gaussian") {
        if (param <= 0.0) s.param_ = 1.0 / 3.0;
    } else if (name == "bernoulli") {
        if (param < 0.0 || param > 1.0)
            throw std::invalid_argument("bernoulli: q outside [0, 1]");
    } else if (name != "uniform" && name != "arcsine" &&
               name != "wigner_semicircle") {
        throw std::invalid_argument("unknown distribution '" + name + "'");
    }
    return s;
}

Complex Spectrum::phi(double a) const {
    if (is_discrete()) {
        Complex sum{0.0, 0.0};
        for (const auto& l : levels_)
            sum += l.degeneracy * std::exp(Complex{0.0, a * l.w});
        return sum;
    }
    if (name_ == "gaussian")
        return std::exp(-a * a * param_ * param_ / 2.0);
    if (name_ == "bernoulli")
        return param_ * std::exp(Complex{0.0, a}) +
               (1.0 - param_) * std::exp(Complex{0.0, -a});
    const double aa = std::abs(a);
    if (name_ == "uniform")
        return aa < 0.5 ? series_phi(even_moment_uniform, a) : std::sin(a) / a;
    if (name_ == "arcsine")
        return aa < 0.5 ? series_phi(even_moment_arcsine, a)
                        : std::cyl_bessel_j(0, aa);
    // wigner_semicircle
    return aa < 0.5 ? series_phi(even_moment_wigner, a)
                    : 2.0 * std::cyl_bessel_j(1, aa) / aa;
}

Complex Spectrum::m1(double a) const {
    if (is_discrete()) {
        Complex sum{0.0, 0.0};
        for (const auto& l : levels_)
            sum += l.degeneracy * l.w * std::exp(Complex{0.0, a * l.w});
        return sum;
    }
    if (name_ == "gaussian")
        return Complex{0.0, a * param_ * param_} * phi(a);
    if (name_ == "bernoulli")
        return param_ * std::exp(Complex{0.0, a}) -
               (1.0 - param_) * std::exp(Complex{0.0, -a});
    // Symmetric distributions: E[w cos(aw)] = 0, so m1 = i E[w sin(aw)],
    // odd in a.
    const double aa = std::abs(a);
    const double sign = a < 0.0 ? -1.0 : 1.0;
    double im;
    if (name_ == "uniform") {
        im = aa < 0.5 ? series_m1_imag(even_moment_uniform, aa)
                      : (std::sin(aa) - aa * std::cos(aa)) / (aa * aa);
    } else if (name_ == "arcsine") {
        im = aa < 0.5 ? series_m1_imag(even_moment_arcsine, aa)
                      : std::cyl_bessel_j(1, aa);
    } else {
        im = aa < 0.5 ? series_m1_imag(even_moment_wigner, aa)
                      : (2.0 / aa) * (2.0 * std::cyl_bessel_j(1, aa) / aa -
                                      std::cyl_bessel_j(0, aa));
    }
    return Complex{0.0, sign * im};
}

double Spectrum::mean() const { return m1(0.0).real(); }

double Spectrum::second_moment() const {
    if (is_discrete()) {
        double sum = 0.0;
        for (const auto& l : levels_) sum += l.degeneracy * l.w * l.w;
        return sum;
    }
    if (name_ == "gaussian") return param_ * param_;
    if (name_ == "bernoulli") return 1.0;
    if (name_ == "uniform") return 1.0 / 3.0;
    if (name_ == "arcsine") return 1.0 / 2.0;
    return 1.0 / 4.0;  // wigner_semicircle
}

namespace {

// <W1| C(a_2..a_p) e^{i a_1 W} |+> / normalization, the building block of
// the recursion; empty list is F0, one angle the closed-form F1.
Complex fp_recurse(const Spectrum& s, const double* a, int p, double sqrt_m2) {
    if (p == 0) return s.m1(0.0) / sqrt_m2;
    if (p == 1)
        return (s.m1(a[0]) - 2.0 * s.m1(0.0) * s.phi(a[0])) / sqrt_m2;
    std::vector<double> merged(a + 1, a + p);
    merged[0] += a[0];
    return fp_recurse(s, merged.data(), p - 1, sqrt_m2) -
           2.0 * s.phi(a[0]) * fp_recurse(s, a + 1, p - 1, sqrt_m2);
}

}  // namespace

Complex fidelity_f0(const Spectrum& s) {
    const double m2 = s.second_moment();
    if (m2 <= 0.0) throw std::invalid_argument("fidelity_f0: zero-norm operator");
    return s.mean() / std::sqrt(m2);
}

Complex fidelity_fp(const Spectrum& s, const std::vector<double>& alphas) {
    const double m2 = s.second_moment();
    if (m2 <= 0.0) throw std::invalid_argument("fidelity_fp: zero-norm operator");
    const Complex f = fp_recurse(s, alphas.data(), static_cast<int>(alphas.size()),
                                 std::sqrt(m2));
    if (std::abs(f) > 1.0 + 1e-9)
        throw std::runtime_error("fidelity_fp: |F| > 1, inconsistent spectrum");
    return f;
}

namespace {

// Minimal Nelder-Mead on -|F_p|; deterministic, no RNG.
std::vector<double> nelder_mead(const Spectrum& s,
                                std::vector<double> start, int iters) {
    const int p = static_cast<int>(start.size());
    auto value = [&](const std::vector<double>& a) {
        return -std::abs(fidelity_fp(s, a));
    };
    std::vector<std::vector<double>> pts(p + 1, start);
    std::vector<double> vals(p + 1);
    for (int i = 0; i < p; ++i) pts[i + 1][i] += 0.1;
    for (int i = 0; i <= p; ++i) vals[i] = value(pts[i]);
    for (int it = 0; it < iters; ++it) {
        // order
        std::vector<int> idx(p + 1);
        for (int i = 0; i <= p; ++i) idx[i] = i;
        std::sort(idx.begin(), idx.end(),
                  [&](int a, int b) { return vals[a] < vals[b]; });
        std::vector<std::vector<double>> op(p + 1);
        std::vector<double> ov(p + 1);
        for (int i = 0; i <= p; ++i) {
            op[i] = pts[idx[i]];
            ov[i] = vals[idx[i]];
        }
        pts = op;
        vals = ov;
        std::vector<double> centroid(p, 0.0);
        for (int i = 0; i < p; ++i)
            for (int j = 0; j < p; ++j) centroid[j] += pts[i][j] / p;
        auto blend = [&](double c) {
            std::vector<double> out(p);
            for (int j = 0; j < p; ++j)
                out[j] = centroid[j] + c * (centroid[j] - pts[p][j]);
            return out;
        };
        auto refl = blend(1.0);
        const double vr = value(refl);
        if (vr < vals[0]) {
            auto exp_ = blend(2.0);
            const double ve = value(exp_);
            if (ve < vr) {
                pts[p] = exp_;
                vals[p] = ve;
            } else {
                pts[p] = refl;
                vals[p] = vr;
            }
        } else if (vr < vals[p - 1]) {
            pts[p] = refl;
            vals[p] = vr;
        } else {
            auto contr = blend(vr < vals[p] ? 0.5 : -0.5);
            const double vc = value(contr);
            if (vc < std::min(vr, vals[p])) {
                pts[p] = contr;
                vals[p] = vc;
            } else {
                for (int i = 1; i <= p; ++i) {
                    for (int j = 0; j < p; ++j)
                        pts[i][j] = 0.5 * (pts[i][j] + pts[0][j]);
                    vals[i] = value(pts[i]);
                }
            }
        }
        double spread = 0.0;
        for (int i = 1; i <= p; ++i) spread = std::max(spread, std::abs(vals[i] - vals[0]));
        if (spread < 1e-14) break;
    }
    int best = 0;
    for (int i = 1; i <= p; ++i)
        if (vals[i] < vals[best]) best = i;
    return pts[best];
}

}  // namespace

VarprepOptimum optimize_alphas(const Spectrum& s, int p, int grid) {
    if (p < 0 || p > 3) throw std::invalid_argument("optimize_alphas: p in {0..3}");
    if (p == 0) return {{}, std::abs(fidelity_f0(s))};
    if (grid < 2) throw std::invalid_argument("optimize_alphas: grid too small");
    // e^{i alpha W} is periodic in alpha only for integer-valued spectra, so
    // scan a symmetric window scaled to the spectrum's typical eigenvalue
    // (covering at least one full period of any discrete integer spectrum),
    // then polish the best grid candidates locally.
    const double scale = std::sqrt(std::max(s.second_moment(), 1e-12));
    const double half = std::max(kPi, 6.0 / scale);
    const double step = 2.0 * half / grid;
    constexpr int kSeeds = 8;
    std::vector<std::pair<double, std::vector<double>>> top;  // ascending |F|
    std::vector<int> idx(p, 0);
    std::vector<double> a(p);
    while (true) {
        for (int j = 0; j < p; ++j) a[j] = -half + idx[j] * step;
        const double f = std::abs(fidelity_fp(s, a));
        if (top.size() < kSeeds || f > top.front().first) {
            top.push_back({f, a});
            std::sort(top.begin(), top.end(),
                      [](const auto& x, const auto& y) { return x.first < y.first; });
            if (top.size() > kSeeds) top.erase(top.begin());
        }
        int j = 0;
        for (; j < p; ++j) {
            if (++idx[j] < grid + 1) break;
            idx[j] = 0;
        }
        if (j == p) break;
    }
    std::vector<double> best = top.back().second;
    double best_abs = top.back().first;
    for (const auto& seed : top) {
        const auto refined = nelder_mead(s, seed.second, 600);
        const double refined_abs = std::abs(fidelity_fp(s, refined));
        if (refined_abs > best_abs) {
            best_abs = refined_abs;
            best = refined;
        }
    }
    return {best, best_abs};
}

namespace {

int support_bits(const RVec& w_support) {
    const auto size = static_cast<std::size_t>(w_support.size());
    if (size == 0 || (size & (size - 1)) != 0)
        throw std::invalid_argument("support length must be a power of two");
    return std::countr_zero(size);
}

}  // namespace

StateVector w1_target(const RVec& w_support, int n) {
    const int k = support_bits(w_support);
    if (k > n) throw std::invalid_argument("w1_target: support exceeds register");
    const double norm2 = w_support.squaredNorm();
    if (norm2 == 0.0) throw std::invalid_argument("w1_target: zero operator");
    StateVector s;
    s.num_qubits = n;
    s.frame = PhaseFrame::trivial(n);
    s.amps = Vec::Zero(std::size_t{1} << n);
    const double scale =
        1.0 / std::sqrt(norm2 * std::pow(2.0, n - k));
    const std::size_t mask = (std::size_t{1} << k) - 1;
    for (std::size_t x = 0; x < s.dim(); ++x)
        s.amps[x] = w_support[x & mask] * scale;
    return s;
}

StateVector build_ansatz_state(const RVec& w_support,
                               const std::vector<double>& alphas, int n) {
    const int k = support_bits(w_support);
    if (k > n) throw std::invalid_argument("build_ansatz_state: support exceeds register");
    const std::size_t dk = std::size_t{1} << k;
    Vec block = Vec::Constant(dk, 1.0 / std::sqrt(double(dk)));
    const double plus = 1.0 / std::sqrt(double(dk));
    for (double alpha : alphas) {
        for (std::size_t x = 0; x < dk; ++x)
            block[x] *= std::exp(Complex{0.0, alpha * w_support[x]});
        // U_x = 1 - 2|+^k><+^k| on the support block
        const Complex overlap = block.sum() * plus;
        for (std::size_t x = 0; x < dk; ++x) block[x] -= 2.0 * overlap * plus;
    }
    StateVector s;
    s.num_qubits = n;
    s.frame = PhaseFrame::trivial(n);
    s.amps = Vec::Zero(std::size_t{1} << n);
    const double pad = std::pow(2.0, -(n - k) / 2.0);
    const std::size_t mask = dk - 1;
    for (std::size_t x = 0; x < s.dim(); ++x)
        s.amps[x] = block[x & mask] * pad;
    return s;
}

StateVector extend_to_w12(const StateVector& state, const PhaseFrame& frame) {
    if (!state.frame.is_trivial())
        throw std::invalid_argument("extend_to_w12: input must be in the "
                                    "computational basis");
    if (frame.size() != state.num_qubits)
        throw std::invalid_argument("extend_to_w12: frame size mismatch");
    const int n = state.num_qubits;
    StateVector out;
    out.num_qubits = 2 * n;
    out.frame = frame.doubled();
    out.amps = Vec::Zero(std::size_t{1} << (2 * n));
    // Copy in the frame basis: coefficient c_x lands on the frame basis
    // state |x x> of the pair-local register (bit 2j+copy holds bit j of x).
    for (std::size_t x = 0; x < state.dim(); ++x) {
        std::size_t y = 0;
        for (int j = 0; j < n; ++j)
            if (x >> j & 1) y |= std::size_t{3} << (2 * j);
        out.amps[y] = state.amps[x];
    }
    return out;
}

}  // namespace otoclab
