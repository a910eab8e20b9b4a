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

#include <array>
#include <cstdint>
#include <optional>

#include "otoclab/common.hpp"
#include "otoclab/frame.hpp"

namespace otoclab {

// Pure state of a qubit register. Amplitudes are stored as coefficients of
// the basis states of `frame` (so the same physical state has different
// amplitude arrays in different frames). Bit ordering:
//   - single register of n qubits: index bit j encodes qubit j;
//   - doubled register of 2n qubits (two copies of an n-site system):
//     bit 2j is site j of copy 1, bit 2j+1 is site j of copy 2 (pair-local
//     layout, so each Bell pair is a contiguous 2-qubit block).
struct StateVector {
    int num_qubits = 0;
    PhaseFrame frame;
    Vec amps;

    std::size_t dim() const { return std::size_t{1} << num_qubits; }
    double norm() const;
};

// Single Hermitian observable on one site, expressed in the working frame.
struct LocalObservable {
    int site;
    Mat2 matrix;
};

// Frame representation of the physical sigma^x (or any Pauli) at a site.
LocalObservable pauli_observable(char pauli, int site, const PhaseFrame& frame);

inline int bit_of(int site, int copy) { return 2 * site + copy; }

StateVector zero_state(int num_qubits, PhaseFrame frame);
StateVector plus_state(int num_qubits, PhaseFrame frame);

// |Bell> of Eq-style 2^{-n/2} sum_x |x>_1 |x>_2 over the frame basis states,
// a 2n-qubit state. With explicit pair_signs, site j holds the computational
// Bell pair (|00> + sign_j |11>)/sqrt(2); the canonical overload picks the
// signs that make every frame-basis coefficient +2^{-n/2} (Phi- on rotated
// sites, Phi+ elsewhere).
StateVector bell_state(int n, const PhaseFrame& frame);
StateVector bell_state(int n, const PhaseFrame& frame, const std::vector<int>& pair_signs);

// Computational-basis Bell signs of the canonical frame Bell state.
std::vector<int> canonical_pair_signs(const PhaseFrame& frame);

// Applies a 2x2 unitary to one qubit (bit index). Throws if u is not unitary
// to 1e-12.
void apply_local_unitary(StateVector& state, int bit, const Mat2& u);

// Re-expresses the state in another frame of the same size.
StateVector to_frame(const StateVector& state, const PhaseFrame& target);

// || (u (x) conj(u)) |Bell> - |Bell> ||, evaluated densely through the full
// Kronecker product (n <= 5).
double isotropic_identity_residual(int n, const Mat& u);

// <state| V (x) V^T |state> on the doubled register; V acts on v.site of
// copy 1 and its frame transpose on the same site of copy 2. Throws if the
// imaginary part exceeds 1e-9.
double expectation_vvt(const StateVector& state, const LocalObservable& v);

struct SampleResult {
    double estimate = 0.0;
    double stderr_est = 0.0;
    // counts[2p+q]: outcome p of V on copy 1, q of V^T on copy 2,
    // with outcome 0 the larger eigenvalue.
    std::array<std::int64_t, 4> counts{};
    std::array<double, 2> eigenvalues{};  // shared by V and V^T
};

// N_m independent projective shots of the joint (V, V^T) measurement.
SampleResult sample_vvt(const StateVector& state, const LocalObservable& v,
                        std::int64_t shots, std::uint64_t seed);

// Exact outcome probabilities of the same measurement, index as counts.
std::array<double, 4> vvt_probabilities(const StateVector& state,
                                        const LocalObservable& v);

// Doubled-register amplitudes reshaped to the 2^n x 2^n matrix M with
// M(r, c) = amp(r interleaved with c); copy-1 bits form the row index.
Mat gather_matrix(const StateVector& state);
void scatter_matrix(const Mat& m, StateVector& state);

}  // namespace otoclab
