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

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "otoclab/common.hpp"
#include "otoclab/frame.hpp"

namespace otoclab {

// Weighted Hermitian Pauli string, e.g. {"IXXY", 0.5}. ops[j] acts on
// qubit j.
struct PauliString {
    std::string ops;
    double coeff = 0.0;

    int num_qubits() const { return static_cast<int>(ops.size()); }

    // Y count mod 2. Odd parity <=> purely imaginary matrix <=> the term is
    // antisymmetric; even parity <=> real matrix <=> symmetric.
    int y_parity() const;
};

// Bit masks + base factor consumed by the kernels: P|x> =
// base/coeff-normalized phase * |x ^ flip| with base = coeff * (-i)^{#Y}.
struct PauliMasks {
    std::uint64_t flip = 0;
    std::uint64_t ymask = 0;
    std::uint64_t zmask = 0;
    Complex base;
};
PauliMasks pauli_masks(const PauliString& p);

enum class ChainPart { AB, AA, BB };

struct HamiltonianSpec {
    int num_qubits = 0;
    std::vector<PauliString> terms;
    // metadata
    std::string sublattice;  // 'A'/'B' per site, may be empty
    double coupling = 0.0;   // J, with hbar = 1; 1/r^3 decay, unit spacing

    HamiltonianSpec& operator+=(const HamiltonianSpec& other);
    HamiltonianSpec scaled(double factor) const;
};

// All-to-all (J/r^3)(X_i X_j + Y_i Y_j) on a unit-spaced chain, restricted
// to the requested sublattice pairing. Sublattice A holds the even-indexed
// sites (0, 2, ...), B the odd-indexed ones.
HamiltonianSpec build_xy_chain(int n, double j_coupling, ChainPart part);

// Site-matched bare-J XX+YY couplings between copy 1 and copy 2 of an n-site
// system, on the doubled 2n-qubit register.
HamiltonianSpec build_intercopy_coupling(int n, double j_coupling);

// Embeds an n-site Hamiltonian into the doubled register, acting on the
// given copy (site j -> bit 2j + copy).
HamiltonianSpec on_doubled_register(const HamiltonianSpec& h, int copy);

// Rewrites the term list into the frame representation (X -> Y, Y -> -X on
// rotated sites).
HamiltonianSpec conjugate_by_frame(const HamiltonianSpec& h, const PhaseFrame& frame);

struct AntisymmetryReport {
    bool holds = false;
    double max_violation = 0.0;  // |coeff| weight of symmetric terms
};

// Algebraic H^T = -H check: after frame conjugation and combining like
// strings, every surviving term must have odd Y parity.
AntisymmetryReport antisymmetry_report(const HamiltonianSpec& h, const PhaseFrame& frame);

// Exhaustive search over the 2^n frames theta_j in {0, pi/2} for one in
// which every term is antisymmetric. n <= 16.
std::optional<PhaseFrame> find_phase_frame(const HamiltonianSpec& h);

// Dense matrix in the frame representation. 2^n limited by the memory
// budget (n <= kMaxQubits / 2).
Mat dense_matrix(const HamiltonianSpec& h, const PhaseFrame& frame);

// out += H * in over amplitude arrays; terms must already be in the frame
// of the amplitudes. `scale` multiplies every coefficient (e.g. -i for a
// Schroedinger right-hand side).
void apply_terms(const std::vector<PauliString>& terms, const Complex* in,
                 Complex* out, std::size_t n, Complex scale = Complex{1.0, 0.0});

// Upper bound sum_k |coeff_k| >= ||H||_2.
double coefficient_norm(const HamiltonianSpec& h);

// JSON document {num_qubits, terms:[{paulis, coeff}], metadata}.
std::string hamiltonian_to_json(const HamiltonianSpec& h);
HamiltonianSpec hamiltonian_from_json(const std::string& text);

}  // namespace otoclab
