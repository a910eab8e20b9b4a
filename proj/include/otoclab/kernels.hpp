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
#include <cstddef>
#include <cstdint>

#include "otoclab/common.hpp"

// Bitwise amplitude kernels. The OpenMP versions live in otoclab::kernels,
// a plain-loop reference implementation in otoclab::kernels::serial; tests
// check them against each other and the benchmark target compares their
// throughput.
//
// Reductions use a fixed chunk decomposition (kReductionChunks pieces,
// independent of thread count) so results are bitwise reproducible for any
// OMP_NUM_THREADS.
namespace otoclab::kernels {

inline constexpr std::size_t kReductionChunks = 256;

// amps <- (u on qubit `bit`) amps
void apply_single_qubit(Complex* amps, std::size_t n, int bit, const Mat2& u);

// out += base * P * in for a Pauli string given as bit masks over qubits:
// flip = X|Y support, ymask/zmask the Y and Z supports. `base` must fold in
// the coefficient and the Y phase prefactor coeff * (-i)^{#Y}; see
// pauli_masks() in pauli.cpp.
void pauli_accumulate(Complex* out, const Complex* in, std::size_t n,
                      std::uint64_t flip, std::uint64_t ymask,
                      std::uint64_t zmask, Complex base);

// out += base * (P rho) and out += base * (rho P) for a dim x dim
// column-major density matrix.
void pauli_mul_left(Complex* out, const Complex* rho, std::size_t dim,
                    std::uint64_t flip, std::uint64_t ymask,
                    std::uint64_t zmask, Complex base);
void pauli_mul_right(Complex* out, const Complex* rho, std::size_t dim,
                     std::uint64_t flip, std::uint64_t ymask,
                     std::uint64_t zmask, Complex base);

Complex dot(const Complex* a, const Complex* b, std::size_t n);
double norm2(const Complex* a, std::size_t n);

// <psi| (A on bit_a) (B on bit_b) |psi>, bit_a != bit_b.
Complex expectation_two_site(const Complex* amps, std::size_t n, int bit_a,
                             const Mat2& a, int bit_b, const Mat2& b);

// Joint probabilities of the four-outcome measurement (eigenbasis u1 on
// qubit bit_a of system 1, eigenbasis u2 on qubit bit_b of system 2).
// Columns of u1/u2 are the eigenvectors; entry [p][q] is P(outcome p, q).
std::array<double, 4> joint_probabilities(const Complex* amps, std::size_t n,
                                          int bit_a, const Mat2& u1, int bit_b,
                                          const Mat2& u2);

// Tr(R V R V) for a dense dim x dim matrix R and a single-qubit operator V
// acting on `bit`. O(dim^2) instead of two dense products.
Complex trace_rvrv(const Mat& r, int bit, const Mat2& v);

namespace serial {
void apply_single_qubit(Complex* amps, std::size_t n, int bit, const Mat2& u);
void pauli_accumulate(Complex* out, const Complex* in, std::size_t n,
                      std::uint64_t flip, std::uint64_t ymask,
                      std::uint64_t zmask, Complex base);
Complex dot(const Complex* a, const Complex* b, std::size_t n);
double norm2(const Complex* a, std::size_t n);
Complex expectation_two_site(const Complex* amps, std::size_t n, int bit_a,
                             const Mat2& a, int bit_b, const Mat2& b);
std::array<double, 4> joint_probabilities(const Complex* amps, std::size_t n,
                                          int bit_a, const Mat2& u1, int bit_b,
                                          const Mat2& u2);
Complex trace_rvrv(const Mat& r, int bit, const Mat2& v);
}  // namespace serial

}  // namespace otoclab::kernels
