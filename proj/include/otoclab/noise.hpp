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
#include <string>
#include <vector>

#include "otoclab/otoc.hpp"
#include "otoclab/state.hpp"

namespace otoclab {

enum class Channel {
    none,
    readout,             // each recorded +-1 flips with probability x
    imperfect_bell,      // each pair prepared with fidelity 1 - delta
    symmetry_breaking,   // H_eps = H_AB + eps (H_AA + H_BB) on both copies
    unequal_hamiltonians,  // copy 1 evolves with (1+eps)H, copy 2 with (1-eps)H
    intercopy_coupling,  // joint register gains eps XX+YY between copies
    spontaneous_emission,  // Lindblad sigma^- at rate gamma on every qubit
    depolarizing,        // uniform depolarizing, both O and O' gain e^{-gamma t}
};

std::string channel_name(Channel c);
Channel channel_from_name(const std::string& name);

struct NoiseConfig {
    Channel kind = Channel::none;
    double strength = 0.0;
    int draws = 200;          // ensemble size (imperfect_bell)
    double lindblad_dt = 1e-3;  // RK4 step (spontaneous_emission)

    // Throws on out-of-range strength: x in [0, 0.5], delta in [0, 1],
    // gamma >= 0; the coherent eps channels accept signed strengths.
    void validate() const;
};

// Expectation rescaling of the readout channel, (1 - 2x)^2.
double readout_factor(double x);

// Flips each recorded outcome independently with probability x and
// recomputes the estimate; binomial resampling of the four joint counts.
SampleResult apply_readout(const SampleResult& r, double x, std::uint64_t seed);

// Pure-state unraveling of rho = prod_j ((1-delta) |B_j><B_j| + delta/4).
// Each draw replaces a pair, with probability delta, by one of the four
// Bell states chosen uniformly; expectations over draws match the density
// matrix.
class ImperfectBellSampler {
  public:
    ImperfectBellSampler(int n, const PhaseFrame& frame,
                         std::vector<int> pair_signs, double delta);

    // Doubled-register pure state in frame coordinates (pair-local layout).
    StateVector draw(std::uint64_t seed) const;
    StateVector ideal() const;

  private:
    int n_;
    PhaseFrame frame_;
    std::vector<int> pair_signs_;
    double delta_;
};

// Runs the base experiment under one imperfection channel. Column meaning
// shifts: `exact` keeps the ideal (noiseless) value, `protocol` and
// `baseline` carry the noisy values, `rescaled` their ratio.
OtocSeries channel_series(const NoiseConfig& noise, const SeriesConfig& base);

// Least-squares slope of log|o - o0| against log(strength). Throws when
// every difference is below 1e-12 (degenerate fit).
double scaling_exponent(const std::vector<double>& strengths,
                        const std::vector<double>& values, double ideal);

}  // namespace otoclab
