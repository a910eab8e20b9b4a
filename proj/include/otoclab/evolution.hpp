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

#include "otoclab/common.hpp"
#include "otoclab/linalg.hpp"
#include "otoclab/pauli.hpp"
#include "otoclab/state.hpp"

namespace otoclab {

// Evolution generator prepared once per Hamiltonian and reused across time
// points. Below `dense_limit` dimensions it carries an eigendecomposition
// (exact propagation); above that only the frame term list is kept and
// evolve_full integrates the Schroedinger equation with fixed-step RK4.
struct Propagator {
    int num_qubits = 0;
    PhaseFrame frame;                      // frame of the register it acts on
    std::vector<PauliString> frame_terms;  // H conjugated into the frame
    double term_norm = 0.0;                // sum_k |coeff_k| >= ||H||
    std::optional<linalg::Eigensystem> eig;

    bool dense() const { return eig.has_value(); }
    std::size_t dim() const { return std::size_t{1} << num_qubits; }
};

inline constexpr std::size_t kDenseEigLimit = 2048;

Propagator make_propagator(const HamiltonianSpec& h, const PhaseFrame& frame,
                           std::size_t dense_limit = kDenseEigLimit);

// |psi> <- exp(-i H t) |psi>. The RK4 path picks the step from term_norm
// so the accumulated truncation error stays near 1e-9; dt_override > 0
// forces a step size instead.
void evolve_full(StateVector& state, const Propagator& p, double t,
                 double dt_override = 0.0);

// Fixed RK4 step sized so the truncation error accumulated over total time
// t stays near error_budget; pass it as dt_override when a looser budget
// than the 1e-9 default is acceptable. Returns 0 (meaning "use the
// default") for dense propagators or degenerate inputs.
double rk4_suggested_dt(const Propagator& p, double t, double error_budget);

// Doubled register in pair-local layout: copy 1 evolves under u1 for time
// t1 and copy 2 under u2 for t2 (amplitude matrix M -> U1(t1) M U2(t2)^T).
// Both propagators act on the n-site single register and must be dense.
void evolve_doubled_product(StateVector& state, const Propagator& u1, double t1,
                            const Propagator& u2, double t2);
void evolve_doubled_product(StateVector& state, const Propagator& u, double t);

struct DensityMatrix {
    int num_qubits = 0;
    PhaseFrame frame;
    Mat rho;

    std::size_t dim() const { return std::size_t{1} << num_qubits; }
    double trace_real() const;
};

DensityMatrix pure_density(const StateVector& s);

// max |rho - rho^dagger| and the smallest eigenvalue, for invariant checks.
double hermiticity_error(const DensityMatrix& rho);
double min_eigenvalue(const DensityMatrix& rho);

struct LindbladOptions {
    double dt = 1e-3;                        // fixed RK4 step (in units 1/J)
    std::uint64_t jump_mask = ~std::uint64_t{0};  // qubits carrying sigma^-
    double trace_tol = 1e-6;                 // abort beyond this drift
    bool halving_check = false;              // re-run at dt/2 and compare
};

struct LindbladReport {
    double trace_drift = 0.0;    // max |tr rho - 1| seen
    double halving_error = 0.0;  // max |rho_dt - rho_dt/2|, if requested
};

// rho <- solution at time t of
//   drho/dt = -i[H, rho] + gamma sum_j (s_j rho s_j^+ - {s_j^+ s_j, rho}/2)
// with s_j the lowering operator on qubit j (over opt.jump_mask). rho must
// be Hermitian on entry; fixed-step RK4.
LindbladReport lindblad_evolve(DensityMatrix& rho, const Propagator& h,
                               double gamma, double t,
                               const LindbladOptions& opt = {});

// Tr(rho (V on copy 1)(V^T on copy 2)) for a doubled-register rho.
double expectation_vvt(const DensityMatrix& rho, const LocalObservable& v);

}  // namespace otoclab
