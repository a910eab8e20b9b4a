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

#include <omp.h>

#include <random>

#include "otoclab/kernels.hpp"
#include "otoclab/pauli.hpp"

using namespace otoclab;

namespace {

Vec random_state(int qubits, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g(0.0, 1.0);
    Vec v(std::size_t{1} << qubits);
    for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = Complex{g(rng), g(rng)};
    v /= v.norm();
    return v;
}

Mat2 random_unitary2(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g(0.0, 1.0);
    Mat2 a;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) a(i, j) = Complex{g(rng), g(rng)};
    const Eigen::HouseholderQR<Mat2> qr(a);
    Mat2 q = qr.householderQ();
    return q;
}

// Dense embedding of a single-qubit operator at `bit` in an n-qubit space.
Mat embed1(const Mat2& u, int bit, int n) {
    const std::size_t d = std::size_t{1} << n;
    Mat m = Mat::Zero(d, d);
    const std::size_t b = std::size_t{1} << bit;
    for (std::size_t c = 0; c < d; ++c) {
        const int cb = (c & b) ? 1 : 0;
        for (int rb = 0; rb < 2; ++rb) {
            const std::size_t r = (c & ~b) | (rb ? b : 0);
            m(r, c) = u(rb, cb);
        }
    }
    return m;
}

Mat dense_string(const std::string& ops) {
    HamiltonianSpec h;
    h.num_qubits = static_cast<int>(ops.size());
    h.terms.push_back({ops, 1.0});
    return dense_matrix(h, PhaseFrame::trivial(h.num_qubits));
}

}  // namespace

TEST_CASE("apply_single_qubit matches dense embedding, omp == serial") {
    for (int n : {3, 5}) {
        for (int bit = 0; bit < n; ++bit) {
            const Mat2 u = random_unitary2(17 * n + bit);
            const Vec in = random_state(n, 23 + bit);
            Vec a = in, b = in;
            kernels::apply_single_qubit(a.data(), a.size(), bit, u);
            kernels::serial::apply_single_qubit(b.data(), b.size(), bit, u);
            const Vec dense = embed1(u, bit, n) * in;
            CHECK((a - dense).norm() < 1e-12);
            CHECK((a - b).norm() == 0.0);
        }
    }
}

TEST_CASE("pauli_accumulate matches the dense string matrix") {
    const std::vector<std::string> strings = {"XYZI", "YYYY", "IZXZ", "XIII",
                                              "ZZZZ", "IIIY"};
    for (const auto& ops : strings) {
        const int n = static_cast<int>(ops.size());
        const PauliString p{ops, 0.7};
        const PauliMasks m = pauli_masks(p);
        const Vec in = random_state(n, 5 + ops[0]);
        Vec out = random_state(n, 99);
        Vec out_serial = out;
        const Complex scale{0.3, -0.2};
        kernels::pauli_accumulate(out.data(), in.data(), in.size(), m.flip,
                                  m.ymask, m.zmask, scale * m.base);
        kernels::serial::pauli_accumulate(out_serial.data(), in.data(),
                                          in.size(), m.flip, m.ymask, m.zmask,
                                          scale * m.base);
        Vec expect = random_state(n, 99);
        expect += scale * 0.7 * (dense_string(ops) * in);
        CHECK((out - expect).norm() < 1e-12);
        CHECK((out - out_serial).norm() == 0.0);
    }
}

TEST_CASE("dot and norm2 agree with Eigen and are thread-count independent") {
    const Vec a = random_state(10, 1), b = random_state(10, 2);
    const Complex d_eigen = a.dot(b);  // conjugates a
    const int saved = omp_get_max_threads();
    omp_set_num_threads(1);
    const Complex d1 = kernels::dot(a.data(), b.data(), a.size());
    const double n1 = kernels::norm2(a.data(), a.size());
    omp_set_num_threads(4);
    const Complex d4 = kernels::dot(a.data(), b.data(), a.size());
    const double n4 = kernels::norm2(a.data(), a.size());
    omp_set_num_threads(saved);
    CHECK(std::abs(d1 - d_eigen) < 1e-12);
    CHECK(d1 == d4);  // bitwise, fixed chunking
    CHECK(n1 == n4);
    // The serial reference accumulates in a different order; compare within
    // round-off.
    CHECK(std::abs(d1 - kernels::serial::dot(a.data(), b.data(), a.size())) <
          1e-13);
    CHECK(n1 == doctest::Approx(a.squaredNorm()).epsilon(1e-13));
}

TEST_CASE("expectation_two_site matches dense") {
    const int n = 5;
    const Vec psi = random_state(n, 77);
    const Mat2 a = random_unitary2(8), b = random_unitary2(9);
    for (auto [ba, bb] : {std::pair{0, 3}, std::pair{4, 1}, std::pair{2, 3}}) {
        const Complex got =
            kernels::expectation_two_site(psi.data(), psi.size(), ba, a, bb, b);
        const Complex dense = psi.dot(embed1(a, ba, n) * (embed1(b, bb, n) * psi));
        CHECK(std::abs(got - dense) < 1e-12);
        CHECK(std::abs(got - kernels::serial::expectation_two_site(
                                 psi.data(), psi.size(), ba, a, bb, b)) < 1e-13);
    }
}

TEST_CASE("joint_probabilities: normalized, matches dense projectors") {
    const int n = 4;
    const Vec psi = random_state(n, 13);
    const Mat2 u1 = random_unitary2(21), u2 = random_unitary2(22);
    const auto pr = kernels::joint_probabilities(psi.data(), psi.size(), 1, u1,
                                                 2, u2);
    const auto ps = kernels::serial::joint_probabilities(psi.data(), psi.size(),
                                                         1, u1, 2, u2);
    double total = 0.0;
    for (int p = 0; p < 2; ++p)
        for (int q = 0; q < 2; ++q) {
            const Mat proj1 =
                embed1(u1.col(p) * u1.col(p).adjoint(), 1, n);
            const Mat proj2 =
                embed1(u2.col(q) * u2.col(q).adjoint(), 2, n);
            const double dense = psi.dot(proj1 * (proj2 * psi)).real();
            CHECK(pr[2 * p + q] == doctest::Approx(dense).epsilon(1e-12));
            CHECK(pr[2 * p + q] == ps[2 * p + q]);
            total += pr[2 * p + q];
        }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("pauli_mul_left/right match dense products") {
    const int n = 3;
    const std::size_t d = std::size_t{1} << n;
    std::mt19937_64 rng(3);
    std::normal_distribution<double> g(0.0, 1.0);
    Mat rho(d, d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) rho(i, j) = Complex{g(rng), g(rng)};
    for (const std::string ops : {"XYZ", "ZIY", "XXI"}) {
        const PauliString p{ops, 1.3};
        const PauliMasks m = pauli_masks(p);
        const Mat dense = 1.3 * dense_string(ops);
        Mat left = Mat::Zero(d, d), right = Mat::Zero(d, d);
        kernels::pauli_mul_left(left.data(), rho.data(), d, m.flip, m.ymask,
                                m.zmask, m.base);
        kernels::pauli_mul_right(right.data(), rho.data(), d, m.flip, m.ymask,
                                 m.zmask, m.base);
        CHECK((left - dense * rho).cwiseAbs().maxCoeff() < 1e-12);
        CHECK((right - rho * dense).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("trace_rvrv equals the dense trace") {
    const int n = 4;
    const std::size_t d = std::size_t{1} << n;
    std::mt19937_64 rng(31);
    std::normal_distribution<double> g(0.0, 1.0);
    Mat r(d, d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) r(i, j) = Complex{g(rng), g(rng)};
    const Mat2 v = random_unitary2(41);
    for (int bit = 0; bit < n; ++bit) {
        const Mat vd = embed1(v, bit, n);
        const Complex dense = (r * vd * r * vd).trace();
        const Complex got = kernels::trace_rvrv(r, bit, v);
        CHECK(std::abs(got - dense) < 1e-10 * std::abs(dense));
        CHECK(std::abs(got - kernels::serial::trace_rvrv(r, bit, v)) <
              1e-10 * std::abs(dense));
    }
}
