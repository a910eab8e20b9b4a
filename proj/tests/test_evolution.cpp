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

#include <cmath>
#include <random>

#include "otoclab/evolution.hpp"

using namespace otoclab;

namespace {

StateVector random_state(int n, const PhaseFrame& f, std::uint64_t seed) {
    StateVector s = zero_state(n, f);
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g(0.0, 1.0);
    for (Eigen::Index i = 0; i < s.amps.size(); ++i)
        s.amps[i] = Complex{g(rng), g(rng)};
    s.amps /= s.amps.norm();
    return s;
}

}  // namespace

TEST_CASE("RK4 integration matches the dense propagator") {
    const int n = 4;
    const auto h = build_xy_chain(n, 1.0, ChainPart::AB);
    const auto f = PhaseFrame::alternating(n);
    const auto dense = make_propagator(h, f);
    const auto rk4 = make_propagator(h, f, /*dense_limit=*/0);
    CHECK(dense.dense());
    CHECK_FALSE(rk4.dense());

    for (double t : {0.0, 0.4, 1.7, 3.0}) {
        auto a = random_state(n, f, 5);
        auto b = a;
        evolve_full(a, dense, t);
        evolve_full(b, rk4, t);
        CHECK((a.amps - b.amps).norm() < 1e-8);
        CHECK(a.norm() == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(b.norm() == doctest::Approx(1.0).epsilon(1e-10));
    }
}

TEST_CASE("RK4 global error scales as dt^4") {
    const int n = 3;
    const auto h = build_xy_chain(n, 1.0, ChainPart::AB);
    const auto f = PhaseFrame::alternating(n);
    const auto dense = make_propagator(h, f);
    const auto rk4 = make_propagator(h, f, 0);
    const double t = 1.0;
    auto ref = random_state(n, f, 9);
    evolve_full(ref, dense, t);

    std::vector<double> logdt, logerr;
    for (double dt : {0.1, 0.05, 0.025, 0.0125}) {
        auto s = random_state(n, f, 9);
        evolve_full(s, rk4, t, dt);
        logdt.push_back(std::log(dt));
        logerr.push_back(std::log((s.amps - ref.amps).norm()));
    }
    const double slope = linalg::fit_slope(logdt, logerr);
    CHECK(slope == doctest::Approx(4.0).epsilon(0.075));
}

TEST_CASE("dense propagation composes: U(t1) U(t2) = U(t1 + t2)") {
    const int n = 4;
    const auto h = build_xy_chain(n, 1.0, ChainPart::AB);
    const auto f = PhaseFrame::alternating(n);
    const auto p = make_propagator(h, f);
    auto a = random_state(n, f, 13);
    auto b = a;
    evolve_full(a, p, 0.7);
    evolve_full(a, p, 0.9);
    evolve_full(b, p, 1.6);
    CHECK((a.amps - b.amps).norm() < 1e-12);
}

TEST_CASE("doubled product evolution equals joint evolution of both copies") {
    const int n = 3;
    const auto h = build_xy_chain(n, 1.0, ChainPart::AB);
    const auto f = PhaseFrame::alternating(n);
    const auto p = make_propagator(h, f);

    // Joint Hamiltonian: copy 1 with weight (1+e), copy 2 with (1-e).
    const double e = 0.2, t = 1.1;
    auto joint = on_doubled_register(h.scaled(1.0 + e), 0);
    joint += on_doubled_register(h.scaled(1.0 - e), 1);
    const auto pj = make_propagator(joint, f.doubled());

    auto a = bell_state(n, f);
    auto b = a;
    evolve_full(a, pj, t);
    const auto p1 = make_propagator(h.scaled(1.0 + e), f);
    const auto p2 = make_propagator(h.scaled(1.0 - e), f);
    evolve_doubled_product(b, p1, t, p2, t);
    CHECK((a.amps - b.amps).norm() < 1e-11);

    // Single-propagator overload: both copies with the same H and time.
    auto c = bell_state(n, f);
    auto d = c;
    evolve_doubled_product(c, make_propagator(h, f), t);
    evolve_doubled_product(d, make_propagator(h, f), t, make_propagator(h, f), t);
    CHECK((c.amps - d.amps).norm() < 1e-12);
}

TEST_CASE("lindblad with gamma = 0 reproduces unitary dynamics") {
    const int n = 3;
    const auto h = build_xy_chain(n, 1.0, ChainPart::AB);
    const auto f = PhaseFrame::alternating(n);
    const auto p = make_propagator(h, f);
    const double t = 0.8;

    auto psi = random_state(n, f, 17);
    auto rho = pure_density(psi);
    LindbladOptions opt;
    opt.dt = 2e-3;
    const auto rep = lindblad_evolve(rho, p, 0.0, t, opt);
    evolve_full(psi, p, t);
    const auto target = pure_density(psi);
    CHECK((rho.rho - target.rho).cwiseAbs().maxCoeff() < 1e-8);
    CHECK(rep.trace_drift < 1e-10);
}

TEST_CASE("single qubit: populations and coherences decay analytically") {
    HamiltonianSpec h;
    h.num_qubits = 1;  // no terms: pure dissipation
    const auto f = PhaseFrame::trivial(1);
    const auto p = make_propagator(h, f);
    const double gamma = 0.7, t = 1.3;

    auto rho = pure_density(plus_state(1, f));
    LindbladOptions opt;
    opt.dt = 1e-3;
    lindblad_evolve(rho, p, gamma, t, opt);
    const double p1 = 0.5 * std::exp(-gamma * t);
    CHECK(std::abs(rho.rho(1, 1).real() - p1) < 1e-8);
    CHECK(std::abs(rho.rho(0, 0).real() - (1.0 - p1)) < 1e-8);
    CHECK(std::abs(rho.rho(0, 1) - Complex{0.5 * std::exp(-gamma * t / 2), 0.0}) <
          1e-8);
}

TEST_CASE("jump mask restricts the dissipator to chosen qubits") {
    HamiltonianSpec h;
    h.num_qubits = 2;
    const auto f = PhaseFrame::trivial(2);
    const auto p = make_propagator(h, f);

    StateVector s = zero_state(2, f);
    s.amps.setZero();
    s.amps[0b11] = 1.0;  // both qubits excited
    auto rho = pure_density(s);
    LindbladOptions opt;
    opt.dt = 1e-3;
    opt.jump_mask = 0b01;  // only qubit 0 decays
    const double gamma = 0.9, t = 1.1;
    lindblad_evolve(rho, p, gamma, t, opt);
    const double e = std::exp(-gamma * t);
    CHECK(std::abs(rho.rho(0b11, 0b11).real() - e) < 1e-8);
    CHECK(std::abs(rho.rho(0b10, 0b10).real() - (1.0 - e)) < 1e-8);
    CHECK(std::abs(rho.rho(0b00, 0b00).real()) < 1e-10);  // qubit 1 never decays
}

TEST_CASE("lindblad invariants: trace, Hermiticity, positivity, halving") {
    const int n = 3;
    const auto h = build_xy_chain(n, 1.0, ChainPart::AB);
    const auto f = PhaseFrame::alternating(n);
    const auto p = make_propagator(h, f);
    auto rho = pure_density(random_state(n, f, 23));
    LindbladOptions opt;
    opt.dt = 2e-3;
    opt.halving_check = true;
    const auto rep = lindblad_evolve(rho, p, 0.4, 1.0, opt);
    CHECK(rho.trace_real() == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(hermiticity_error(rho) < 1e-12);
    CHECK(min_eigenvalue(rho) > -1e-10);
    CHECK(rep.halving_error < 1e-7);
    CHECK(rep.trace_drift < 1e-10);
}

TEST_CASE("density-matrix expectation_vvt matches the pure-state value") {
    const int n = 2;
    const auto f = PhaseFrame::alternating(n);
    auto s = bell_state(n, f);
    const auto h = build_xy_chain(n, 1.0, ChainPart::AB);
    evolve_doubled_product(s, make_propagator(h, f), 0.9);
    const auto v = pauli_observable('X', 1, f);
    const auto rho = pure_density(s);
    CHECK(expectation_vvt(rho, v) ==
          doctest::Approx(expectation_vvt(s, v)).epsilon(1e-11));
}
