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

#include <random>
#include <sstream>

#include "otoclab/otoc.hpp"

using namespace otoclab;

namespace {

// Fully independent dense oracle: (1/Tr WW+) Re Tr(W+ V(t) W V(t)) computed
// directly from matrix exponentials, no shared code with the engine beyond
// dense_matrix.
double dense_otoc(const HamiltonianSpec& h, const PhaseFrame& f, int w_site,
                  int v_site, double t) {
    const Mat hm = dense_matrix(h, f);
    const auto es = linalg::hermitian_eig(hm);
    const Mat u = linalg::propagator_matrix(es, t);
    const std::size_t d = hm.rows();

    HamiltonianSpec zw, xv;
    zw.num_qubits = xv.num_qubits = h.num_qubits;
    std::string sz(h.num_qubits, 'I'), sx(h.num_qubits, 'I');
    sz[w_site] = 'Z';
    sx[v_site] = 'X';
    zw.terms = {{sz, 1.0}};
    xv.terms = {{sx, 1.0}};
    const Mat w = dense_matrix(zw, f);
    const Mat v0 = dense_matrix(xv, f);
    const Mat vt = u.adjoint() * v0 * u;  // V(t) = e^{iHt} V e^{-iHt}
    const Complex tr = (w.adjoint() * vt * w * vt).trace();
    return tr.real() / static_cast<double>(d);
}

HamiltonianSpec random_odd_y(int n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> pick(0, 3);
    std::uniform_real_distribution<double> coeff(-1.0, 1.0);
    HamiltonianSpec h;
    h.num_qubits = n;
    const char paulis[] = "IXYZ";
    while (h.terms.size() < 5) {
        std::string ops(n, 'I');
        for (int j = 0; j < n; ++j) ops[j] = paulis[pick(rng)];
        PauliString p{ops, coeff(rng)};
        if (p.y_parity() == 1) h.terms.push_back(p);  // purely imaginary term
    }
    return h;
}

}  // namespace

TEST_CASE("t = 0 values: -1 on site, +1 off site, for both paths") {
    const int n = 5;
    const auto h = build_xy_chain(n, 1.0, ChainPart::AB);
    OtocEngine eng(h, PhaseFrame::alternating(n));
    CHECK(eng.antisymmetric());
    for (int w = 0; w < n; ++w)
        for (int v = 0; v < n; ++v) {
            const double expect = (w == v) ? -1.0 : 1.0;
            CHECK(eng.exact(w, v, 0.0) == doctest::Approx(expect).epsilon(1e-12));
            CHECK(eng.protocol(w, v, 0.0) ==
                  doctest::Approx(expect).epsilon(1e-12));
        }
}

TEST_CASE("exact path agrees with the dense matrix-exponential oracle") {
    const int n = 4;
    const auto h = build_xy_chain(n, 1.0, ChainPart::AB);
    const auto f = PhaseFrame::alternating(n);
    OtocEngine eng(h, f);
    for (double t : {0.3, 0.9, 2.1})
        for (int v = 0; v < n; ++v)
            CHECK(eng.exact(1, v, t) ==
                  doctest::Approx(dense_otoc(h, f, 1, v, t)).epsilon(1e-10));
}

TEST_CASE("protocol equals exact whenever H^T = -H in the frame") {
    // XY chain in the alternating frame.
    const int n = 5;
    const auto h = build_xy_chain(n, 1.0, ChainPart::AB);
    OtocEngine eng(h, PhaseFrame::alternating(n));
    for (double t : {0.25, 0.8, 1.6})
        for (int v = 0; v < n; ++v)
            CHECK(std::abs(eng.protocol(2, v, t) - eng.exact(2, v, t)) < 1e-10);

    // Random odd-Y Hamiltonians are antisymmetric in the trivial frame.
    for (int k = 0; k < 8; ++k) {
        const auto hr = random_odd_y(3, 100 + k);
        OtocEngine e2(hr, PhaseFrame::trivial(3));
        CHECK(e2.antisymmetric());
        for (double t : {0.5, 1.5})
            CHECK(std::abs(e2.protocol(0, 2, t) - e2.exact(0, 2, t)) < 1e-9);
    }
}

TEST_CASE("baseline O' is exactly 1 for antisymmetric evolution") {
    const int n = 6;
    const auto h = build_xy_chain(n, 1.0, ChainPart::AB);
    OtocEngine eng(h, PhaseFrame::alternating(n));
    for (double t : {0.0, 0.7, 1.4, 2.8})
        CHECK(eng.baseline(3, t) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("registered diagonal W reproduces the sigma^z path") {
    const int n = 4;
    const auto h = build_xy_chain(n, 1.0, ChainPart::AB);
    OtocEngine eng(h, PhaseFrame::alternating(n));
    const std::size_t d = std::size_t{1} << n;
    RVec diag(d);
    const int site = 2;
    for (std::size_t x = 0; x < d; ++x)
        diag[x] = (x >> site & 1) ? -1.0 : 1.0;
    const int handle = eng.register_w_diag(diag);
    for (double t : {0.4, 1.2}) {
        CHECK(std::abs(eng.exact(handle, 1, t) - eng.exact(site, 1, t)) < 1e-12);
        CHECK(std::abs(eng.protocol(handle, 1, t) - eng.protocol(site, 1, t)) <
              1e-12);
    }
}

TEST_CASE("otoc_rescaled guards against a vanishing baseline") {
    CHECK(otoc_rescaled(0.5, 0.9) == doctest::Approx(0.5 / 0.9));
    CHECK_THROWS(otoc_rescaled(0.5, 1e-9));
}

TEST_CASE("time_grid endpoints and spacing") {
    const auto g = time_grid(0.0, 3.0, 61);
    REQUIRE(g.size() == 61);
    CHECK(g.front() == 0.0);
    CHECK(g.back() == doctest::Approx(3.0));
    CHECK(g[1] - g[0] == doctest::Approx(0.05));
}

TEST_CASE("run_series: fields, determinism, sampling consistency") {
    SeriesConfig cfg;
    cfg.h = build_xy_chain(4, 1.0, ChainPart::AB);
    cfg.w_site = 1;
    cfg.v_site = 3;
    cfg.times = time_grid(0.0, 1.0, 6);
    cfg.shots = 2000;
    cfg.seed = 42;
    cfg.model_name = "xy_chain";

    const auto s1 = run_series(cfg);
    const auto s2 = run_series(cfg);
    REQUIRE(s1.points.size() == 6);
    CHECK(s1.antisymmetric);
    std::ostringstream c1, c2;
    write_series_csv(s1, c1);
    write_series_csv(s2, c2);
    CHECK(c1.str() == c2.str());  // byte-identical at a fixed seed
    CHECK(c1.str().rfind("t,exact,protocol,baseline,", 0) == 0);

    for (const auto& pt : s1.points) {
        CHECK(std::abs(pt.protocol - pt.exact) < 1e-9);
        CHECK(pt.baseline == doctest::Approx(1.0).epsilon(1e-10));
        REQUIRE(pt.sampled.has_value());
        CHECK(pt.sampled->shots == 2000);
        // Sampled mean within 5 sigma of the true value.
        const double sigma = std::max(pt.sampled->stderr_est, 1e-3);
        CHECK(std::abs(pt.sampled->estimate - pt.protocol) < 5.0 * sigma);
        CHECK(pt.rescaled ==
              doctest::Approx(pt.sampled->estimate / pt.baseline).epsilon(1e-12));
    }
}

TEST_CASE("engine reports a non-antisymmetric frame and protocol deviates") {
    // ZZ coupling cannot be fixed by any phase frame.
    HamiltonianSpec h;
    h.num_qubits = 3;
    h.terms = {{"ZZI", 1.0}, {"IZZ", 1.0}, {"XII", 0.5}};
    OtocEngine eng(h, PhaseFrame::trivial(3));
    CHECK_FALSE(eng.antisymmetric());
}
