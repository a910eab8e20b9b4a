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

#include <bit>
#include <cmath>
#include <random>

#include "otoclab/otoc.hpp"
#include "otoclab/varprep.hpp"

using namespace otoclab;

namespace {

// Spectrum of an explicit diagonal: every entry its own level.
Spectrum spectrum_of(const RVec& w_support, int n) {
    std::vector<Spectrum::Level> levels;
    const double pad = std::pow(2.0, n) / w_support.size();
    for (Eigen::Index i = 0; i < w_support.size(); ++i)
        levels.push_back({w_support[i], pad});
    return Spectrum::discrete(std::move(levels));
}

// Circuit-side overlap <W1 | ansatz>, the independent oracle for the
// recursion.
Complex circuit_overlap(const RVec& w_support, const std::vector<double>& alphas,
                        int n) {
    const auto target = w1_target(w_support, n);
    const auto psi = build_ansatz_state(w_support, alphas, n);
    Complex o = 0.0;
    for (Eigen::Index i = 0; i < psi.amps.size(); ++i)
        o += std::conj(target.amps[i]) * psi.amps[i];
    return o;
}

}  // namespace

TEST_CASE("zsum spectrum: binomial degeneracies, mean 0, second moment k") {
    for (int k : {2, 5}) {
        const int n = k + 1;
        const auto s = Spectrum::zsum(k, n);
        REQUIRE(static_cast<int>(s.levels().size()) == k + 1);
        double total = 0.0;
        for (const auto& l : s.levels()) total += l.degeneracy;
        CHECK(total == doctest::Approx(1.0));  // weights stored normalized
        // Binomial weight ratio between the extreme and next level.
        CHECK(s.levels()[1].degeneracy / s.levels()[0].degeneracy ==
              doctest::Approx(double(k)));
        CHECK(std::abs(s.mean()) < 1e-12);
        CHECK(s.second_moment() == doctest::Approx(double(k)));
    }
}

TEST_CASE("characteristic functions match brute-force integrals") {
    // Quadrature oracle over the density, 200k panels of the midpoint rule.
    auto quad = [](auto density, double lo, double hi, double a) {
        const int m = 200000;
        const double h = (hi - lo) / m;
        Complex sum = 0.0;
        for (int i = 0; i < m; ++i) {
            const double w = lo + (i + 0.5) * h;
            sum += density(w) * std::exp(Complex{0.0, a * w}) * h;
        }
        return sum;
    };
    const double a = 1.37;
    const auto uni = Spectrum::named("uniform");
    CHECK(std::abs(uni.phi(a) - quad([](double) { return 0.5; }, -1, 1, a)) <
          1e-9);
    // Arcsine via the substitution w = sin(s): smooth integrand, no endpoint
    // singularity.
    const auto arc = Spectrum::named("arcsine");
    {
        const int m = 200000;
        const double h = kPi / m;
        Complex sum = 0.0;
        for (int i = 0; i < m; ++i) {
            const double s = -kPi / 2 + (i + 0.5) * h;
            sum += std::exp(Complex{0.0, a * std::sin(s)}) * h / kPi;
        }
        CHECK(std::abs(arc.phi(a) - sum) < 1e-9);
    }
    const auto wig = Spectrum::named("wigner_semicircle");
    CHECK(std::abs(wig.phi(a) -
                   quad([](double w) { return 2.0 / kPi * std::sqrt(1 - w * w); },
                        -1, 1, a)) < 1e-9);
    const auto gauss = Spectrum::named("gaussian", 1.0 / 3.0);
    CHECK(std::abs(gauss.phi(a) - std::exp(-a * a / 18.0)) < 1e-12);
    // Bernoulli: eigenvalues +-1 with P(+1) = q.
    const auto bern = Spectrum::named("bernoulli", 0.3);
    CHECK(std::abs(bern.phi(a) - (0.3 * std::exp(Complex{0.0, a}) +
                                  0.7 * std::exp(Complex{0.0, -a}))) < 1e-12);
    CHECK(bern.mean() == doctest::Approx(-0.4));
    CHECK(bern.second_moment() == doctest::Approx(1.0));

    // Small-|a| branch continuity across the series switch.
    for (const auto& s : {uni, arc, wig}) {
        CHECK(std::abs(s.phi(0.499) - s.phi(0.501)) < 1e-3);
        CHECK(std::abs(s.phi(0.0) - 1.0) < 1e-14);
        CHECK(std::abs(s.m1(0.0) - s.mean()) < 1e-14);
    }
}

TEST_CASE("F0 closed forms") {
    // Symmetric spectra: E[w] = 0.
    for (const auto* name : {"uniform", "arcsine", "wigner_semicircle"})
        CHECK(std::abs(fidelity_f0(Spectrum::named(name))) < 1e-14);
    // Bernoulli(q) on +-1: E[w]/sqrt(E[w^2]) = 2q - 1.
    CHECK(std::abs(fidelity_f0(Spectrum::named("bernoulli", 0.25))) ==
          doctest::Approx(0.5));
    // F_1 at alpha = 0 folds back to -F_0 (one useless reflection).
    const auto s = Spectrum::named("bernoulli", 0.25);
    CHECK(std::abs(fidelity_fp(s, {0.0}) + fidelity_f0(s)) < 1e-12);
}

TEST_CASE("Pauli spectrum reaches |F1| = 1 at alpha = pi/2") {
    // w in {+1, -1} with equal weight, e.g. sigma^z on one qubit.
    const auto s = Spectrum::discrete({{1.0, 1.0}, {-1.0, 1.0}});
    CHECK(std::abs(fidelity_fp(s, {kPi / 2})) == doctest::Approx(1.0));
}

TEST_CASE("recursion equals the explicit circuit on random spectra") {
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> wdist(-1.0, 1.0);
    std::uniform_real_distribution<double> adist(0.0, 2 * kPi);
    std::uniform_int_distribution<int> kdist(1, 4), pdist(1, 3);
    for (int rep = 0; rep < 20; ++rep) {
        const int k = kdist(rng);
        const int n = k + rep % 2;  // exercise both n = k and padded n > k
        RVec w(std::size_t{1} << k);
        for (Eigen::Index i = 0; i < w.size(); ++i) w[i] = wdist(rng);
        const int p = pdist(rng);
        std::vector<double> alphas(p);
        for (double& a : alphas) a = adist(rng);
        const Complex analytic = fidelity_fp(spectrum_of(w, n), alphas);
        const Complex circuit = circuit_overlap(w, alphas, n);
        CHECK(std::abs(analytic - circuit) < 1e-10);
    }
}

TEST_CASE("bernoulli at alpha = pi recovers the amplitude-amplification law") {
    // m marked entries out of 2^k, rotation angle sin(theta) = sqrt(m/2^n).
    const int k = 3, n = 4, m = 3;
    RVec w = RVec::Zero(1 << k);
    for (int i = 0; i < m; ++i) w[2 * i] = 1.0;
    // Padding qubits stay in |+> throughout, so the dynamics reduce to a
    // k-qubit search with marked fraction m / 2^k.
    const double theta_eff = std::asin(std::sqrt(double(m) / (1 << k)));
    for (int p : {1, 2, 3}) {
        const std::vector<double> alphas(p, kPi);
        const double got = std::abs(circuit_overlap(w, alphas, n));
        const double expect = std::abs(std::sin((2 * p + 1) * theta_eff));
        CHECK(got == doctest::Approx(expect).epsilon(1e-10));
        CHECK(std::abs(fidelity_fp(spectrum_of(w, n), alphas)) ==
              doctest::Approx(expect).epsilon(1e-10));
    }
}

TEST_CASE("optimizer: exact solve for bernoulli(1/2) at depth 1") {
    const auto s = Spectrum::named("bernoulli", 0.5);
    const auto opt = optimize_alphas(s, 1, 32);
    CHECK(opt.max_abs == doctest::Approx(1.0).epsilon(1e-9));
    // Depth never hurts.
    const auto u = Spectrum::named("uniform");
    double prev = std::abs(fidelity_f0(u));
    for (int p = 1; p <= 2; ++p) {
        const auto o = optimize_alphas(u, p, 48);
        CHECK(o.max_abs >= prev - 1e-9);
        prev = o.max_abs;
    }
    // |F| stays a fidelity.
    CHECK(prev <= 1.0 + 1e-12);
}

TEST_CASE("extend_to_w12 matches the engine's initial doubled state") {
    const int n = 3;
    const auto h = build_xy_chain(n, 1.0, ChainPart::AB);
    const auto f = PhaseFrame::alternating(n);
    OtocEngine eng(h, f);
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> wdist(-1.0, 1.0);
    RVec diag(1 << n);
    for (Eigen::Index i = 0; i < diag.size(); ++i) diag[i] = wdist(rng);
    const int handle = eng.register_w_diag(diag);
    const auto from_engine = eng.initial_state(handle);
    const auto from_varprep = extend_to_w12(w1_target(diag, n), f);
    CHECK((from_engine.amps - from_varprep.amps).norm() < 1e-12);
}
