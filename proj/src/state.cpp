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

#include "otoclab/state.hpp"

#include <bit>
#include <cmath>
#include <random>
#include <stdexcept>

#include "otoclab/kernels.hpp"

namespace otoclab {

namespace {

void check_register_size(int num_qubits) {
    if (num_qubits < 1 || num_qubits > kMaxQubits)
        throw std::invalid_argument("register size outside [1, " +
                                    std::to_string(kMaxQubits) + "] qubits");
}

// Spreads the bits of x to even positions: bit j -> bit 2j.
std::size_t spread_bits(std::size_t x) {
    std::size_t r = 0;
    for (int j = 0; x >> j; ++j)
        if (x >> j & 1) r |= std::size_t{1} << (2 * j);
    return r;
}

void check_unitary(const Mat2& u) {
    if ((u.adjoint() * u - Mat2::Identity()).cwiseAbs().maxCoeff() > 1e-12)
        throw std::invalid_argument("matrix is not unitary to 1e-12");
}

}  // namespace

Mat2 pauli_in_frame(char pauli, bool rotated) {
    Mat2 m;
    const Complex i{0.0, 1.0};
    switch (pauli) {
        case 'I': m << 1, 0, 0, 1; return m;
        case 'Z': m << 1, 0, 0, -1; return m;
        case 'X':
            if (rotated) m << 0, -i, i, 0;   // Y
            else m << 0, 1, 1, 0;
            return m;
        case 'Y':
            if (rotated) m << 0, -1, -1, 0;  // -X
            else m << 0, -i, i, 0;
            return m;
        default: throw std::invalid_argument("unknown Pauli symbol");
    }
}

LocalObservable pauli_observable(char pauli, int site, const PhaseFrame& frame) {
    return LocalObservable{site, pauli_in_frame(pauli, frame.rotated(site))};
}

double StateVector::norm() const {
    return std::sqrt(kernels::norm2(amps.data(), dim()));
}

StateVector zero_state(int num_qubits, PhaseFrame frame) {
    check_register_size(num_qubits);
    StateVector s{num_qubits, std::move(frame), Vec::Zero(std::size_t{1} << num_qubits)};
    s.amps[0] = 1.0;
    return s;
}

StateVector plus_state(int num_qubits, PhaseFrame frame) {
    check_register_size(num_qubits);
    const std::size_t d = std::size_t{1} << num_qubits;
    StateVector s{num_qubits, std::move(frame),
                  Vec::Constant(d, Complex{1.0 / std::sqrt(double(d)), 0.0})};
    return s;
}

std::vector<int> canonical_pair_signs(const PhaseFrame& frame) {
    std::vector<int> signs(frame.size());
    for (int j = 0; j < frame.size(); ++j) signs[j] = frame.rotated(j) ? -1 : +1;
    return signs;
}

StateVector bell_state(int n, const PhaseFrame& frame, const std::vector<int>& pair_signs) {
    check_register_size(2 * n);
    if (frame.size() != n) throw std::invalid_argument("bell_state: frame size != n");
    if (static_cast<int>(pair_signs.size()) != n)
        throw std::invalid_argument("bell_state: pair_signs size != n");
    StateVector s{2 * n, frame.doubled(), Vec::Zero(std::size_t{1} << (2 * n))};
    // Frame coefficient of the |11> component at site j: the computational
    // sign times i^2 = -1 per rotated pair.
    std::vector<double> frame_sign(n);
    for (int j = 0; j < n; ++j) {
        if (pair_signs[j] != 1 && pair_signs[j] != -1)
            throw std::invalid_argument("bell_state: pair signs must be +-1");
        frame_sign[j] = pair_signs[j] * (frame.rotated(j) ? -1.0 : 1.0);
    }
    const double scale = std::pow(2.0, -0.5 * n);
    const std::size_t dn = std::size_t{1} << n;
    for (std::size_t x = 0; x < dn; ++x) {
        double sign = 1.0;
        for (int j = 0; j < n; ++j)
            if (x >> j & 1) sign *= frame_sign[j];
        s.amps[spread_bits(x) * 3] = scale * sign;
    }
    return s;
}

StateVector bell_state(int n, const PhaseFrame& frame) {
    return bell_state(n, frame, canonical_pair_signs(frame));
}

void apply_local_unitary(StateVector& state, int bit, const Mat2& u) {
    if (bit < 0 || bit >= state.num_qubits)
        throw std::invalid_argument("apply_local_unitary: bit out of range");
    check_unitary(u);
    kernels::apply_single_qubit(state.amps.data(), state.dim(), bit, u);
}

StateVector to_frame(const StateVector& state, const PhaseFrame& target) {
    if (target.size() != state.num_qubits)
        throw std::invalid_argument("to_frame: frame size mismatch");
    // c_target = c_source * prod_j (phase ratio)^{x_j}; with theta restricted
    // to {0, pi/2} the per-qubit ratio is 1, +i or -i.
    StateVector out{state.num_qubits, target, state.amps};
    const std::uint64_t src = state.frame.rotated_mask();
    const std::uint64_t dst = target.rotated_mask();
    if (src == dst) return out;
    const Complex i{0.0, 1.0};
    for (std::size_t x = 0; x < state.dim(); ++x) {
        // leaving the source frame multiplies |1> coefficients by -i on
        // rotated sites; entering the target frame multiplies by +i.
        const int k_src = std::popcount(x & src);
        const int k_dst = std::popcount(x & dst);
        out.amps[x] *= std::pow(-i, k_src) * std::pow(i, k_dst);
    }
    return out;
}

double isotropic_identity_residual(int n, const Mat& u) {
    if (n < 1 || n > 5)
        throw std::invalid_argument("isotropic_identity_residual: n must be in [1,5]");
    const std::size_t d = std::size_t{1} << n;
    if (static_cast<std::size_t>(u.rows()) != d || static_cast<std::size_t>(u.cols()) != d)
        throw std::invalid_argument("isotropic_identity_residual: dimension mismatch");
    if ((u.adjoint() * u - Mat::Identity(d, d)).cwiseAbs().maxCoeff() > 1e-10)
        throw std::invalid_argument("isotropic_identity_residual: u not unitary");
    StateVector bell = bell_state(n, PhaseFrame::trivial(n));
    const Mat m0 = gather_matrix(bell);
    // column-major vec: vec(u M conj(u)^T) = kron(conj(u), u) vec(M)
    Mat k(d * d, d * d);
    for (std::size_t bc = 0; bc < d; ++bc)
        for (std::size_t br = 0; br < d; ++br)
            k.block(br * d, bc * d, d, d) = std::conj(u(br, bc)) * u;
    Eigen::Map<const Vec> v(m0.data(), d * d);
    return (k * v - v).norm();
}

double expectation_vvt(const StateVector& state, const LocalObservable& v) {
    if (state.num_qubits % 2 != 0)
        throw std::invalid_argument("expectation_vvt: needs a doubled register");
    if ((v.matrix - v.matrix.adjoint()).cwiseAbs().maxCoeff() > 1e-12)
        throw std::invalid_argument("expectation_vvt: observable not Hermitian");
    const Complex val = kernels::expectation_two_site(
        state.amps.data(), state.dim(), bit_of(v.site, 0), v.matrix,
        bit_of(v.site, 1), v.matrix.transpose());
    if (std::abs(val.imag()) > 1e-9)
        throw std::runtime_error("expectation_vvt: imaginary part " +
                                 std::to_string(val.imag()));
    return val.real();
}

std::array<double, 4> vvt_probabilities(const StateVector& state,
                                        const LocalObservable& v) {
    Eigen::SelfAdjointEigenSolver<Mat2> es(v.matrix);
    // descending order: outcome 0 is the larger eigenvalue
    Mat2 u1;
    u1.col(0) = es.eigenvectors().col(1);
    u1.col(1) = es.eigenvectors().col(0);
    const Mat2 u2 = u1.conjugate();  // eigenvectors of v^T
    return kernels::joint_probabilities(state.amps.data(), state.dim(),
                                        bit_of(v.site, 0), u1,
                                        bit_of(v.site, 1), u2);
}

SampleResult sample_vvt(const StateVector& state, const LocalObservable& v,
                        std::int64_t shots, std::uint64_t seed) {
    if (shots < 1) throw std::invalid_argument("sample_vvt: shots must be >= 1");
    Eigen::SelfAdjointEigenSolver<Mat2> es(v.matrix);
    SampleResult r;
    r.eigenvalues = {es.eigenvalues()[1], es.eigenvalues()[0]};
    auto prob = vvt_probabilities(state, v);
    double cdf[4];
    double acc = 0.0;
    for (int k = 0; k < 4; ++k) cdf[k] = (acc += prob[k]);
    cdf[3] = 1.0 + 1e-15;  // guard against rounding in the last bin
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    double sum = 0.0, sum2 = 0.0;
    for (std::int64_t s = 0; s < shots; ++s) {
        const double x = uni(rng);
        int k = 0;
        while (k < 3 && x >= cdf[k]) ++k;
        ++r.counts[k];
        const double prod = r.eigenvalues[k >> 1] * r.eigenvalues[k & 1];
        sum += prod;
        sum2 += prod * prod;
    }
    r.estimate = sum / double(shots);
    if (shots > 1) {
        const double var =
            std::max(0.0, (sum2 - double(shots) * r.estimate * r.estimate) /
                              double(shots - 1));
        r.stderr_est = std::sqrt(var / double(shots));
    }
    return r;
}

Mat gather_matrix(const StateVector& state) {
    if (state.num_qubits % 2 != 0)
        throw std::invalid_argument("gather_matrix: needs a doubled register");
    const int n = state.num_qubits / 2;
    const std::size_t d = std::size_t{1} << n;
    std::vector<std::size_t> spread(d);
    for (std::size_t x = 0; x < d; ++x) spread[x] = spread_bits(x);
    Mat m(d, d);
#pragma omp parallel for schedule(static)
    for (std::size_t c = 0; c < d; ++c) {
        const std::size_t cpart = spread[c] << 1;
        for (std::size_t r = 0; r < d; ++r) m(r, c) = state.amps[spread[r] | cpart];
    }
    return m;
}

void scatter_matrix(const Mat& m, StateVector& state) {
    if (state.num_qubits % 2 != 0)
        throw std::invalid_argument("scatter_matrix: needs a doubled register");
    const int n = state.num_qubits / 2;
    const std::size_t d = std::size_t{1} << n;
    if (static_cast<std::size_t>(m.rows()) != d || static_cast<std::size_t>(m.cols()) != d)
        throw std::invalid_argument("scatter_matrix: dimension mismatch");
    std::vector<std::size_t> spread(d);
    for (std::size_t x = 0; x < d; ++x) spread[x] = spread_bits(x);
#pragma omp parallel for schedule(static)
    for (std::size_t c = 0; c < d; ++c) {
        const std::size_t cpart = spread[c] << 1;
        for (std::size_t r = 0; r < d; ++r) state.amps[spread[r] | cpart] = m(r, c);
    }
}

}  // namespace otoclab
