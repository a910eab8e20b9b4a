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

#include <string>
#include <vector>

#include "otoclab/common.hpp"
#include "otoclab/state.hpp"

namespace otoclab {

// Eigenvalue distribution of a diagonal operator W, either as explicit
// levels (w_i, degeneracy N_i with sum N_i = 2^n) or as a named analytic
// distribution on [-1, 1] with closed-form characteristic function. Both
// expose the three functionals the fidelity recursion consumes.
class Spectrum {
  public:
    struct Level {
        double w = 0.0;
        double degeneracy = 0.0;
    };

    static Spectrum discrete(std::vector<Level> levels);
    // W = sum_{i<k} sigma^z_i on n qubits: eigenvalues k - 2m with
    // degeneracy C(k, m) 2^{n-k}.
    static Spectrum zsum(int k, int n);
    // "uniform", "arcsine", "wigner_semicircle", "gaussian" (param = sigma),
    // "bernoulli" (eigenvalues +-1 with P(+1) = param).
    static Spectrum named(const std::string& name, double param = 0.0);

    Complex phi(double a) const;   // E[e^{iaw}]
    Complex m1(double a) const;    // E[w e^{iaw}]
    double mean() const;           // E[w]
    double second_moment() const;  // E[w^2]

    bool is_discrete() const { return !levels_.empty(); }
    const std::vector<Level>& levels() const { return levels_; }
    const std::string& name() const { return name_; }

  private:
    Spectrum() = default;
    std::string name_;   // empty for discrete
    double param_ = 0.0;
    std::vector<Level> levels_;
};

// F0 = E[w]/sqrt(E[w^2]), the p=0 fidelity of |+^n> with |W1>.
Complex fidelity_f0(const Spectrum& s);

// Exact recursive evaluation of the depth-p overlap <W1|psi(a_1..a_p)>,
// where a_1 is the first angle applied in the circuit.
Complex fidelity_fp(const Spectrum& s, const std::vector<double>& alphas);

struct VarprepOptimum {
    std::vector<double> alphas;
    double max_abs = 0.0;
};

// Deterministic coarse grid over a symmetric window scaled to the spectrum's
// typical eigenvalue (grid+1 points per axis), followed by Nelder-Mead
// refinement of the best candidates of |F_p|.
VarprepOptimum optimize_alphas(const Spectrum& s, int p, int grid = 64);

// |W1> = sum_x w_x |x> / sqrt(sum w^2) for the diagonal W given by its
// 2^k support-block entries, padded with |+> on the remaining n - k qubits.
StateVector w1_target(const RVec& w_support, int n);

// The depth-p ansatz: prod_j [U_x e^{i a_j W}] |+^n> with the reflection
// U_x = 1 - 2|+^k><+^k| acting on the support block; alphas[0] applied
// first.
StateVector build_ansatz_state(const RVec& w_support,
                               const std::vector<double>& alphas, int n);

// CNOT-copies an n-qubit diagonal-basis state into the doubled register:
// sum_x c_x |x> -> sum_x c_x |x>|x> in pair-local layout, re-expressed in
// `frame` coordinates.
StateVector extend_to_w12(const StateVector& state, const PhaseFrame& frame);

}  // namespace otoclab
