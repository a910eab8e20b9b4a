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
#include <stdexcept>
#include <vector>

#include "otoclab/common.hpp"

namespace otoclab {

// Per-qubit phase assignment defining the working basis. theta = 0 keeps the
// computational basis {|0>, |1>}; theta = pi/2 marks a rotated site whose
// basis is {|0>, e^{-i pi/2}|1>}. The sign of the rotation is fixed so that
// conjugating operators into the frame maps X -> Y and Y -> -X on rotated
// sites. Only theta in {0, pi/2} is accepted.
class PhaseFrame {
  public:
    PhaseFrame() = default;

    explicit PhaseFrame(std::vector<double> thetas) : thetas_(std::move(thetas)) {
        for (double t : thetas_)
            if (t != 0.0 && t != kPi / 2)
                throw std::invalid_argument("PhaseFrame: theta must be 0 or pi/2");
    }

    static PhaseFrame trivial(int n) { return PhaseFrame(std::vector<double>(n, 0.0)); }

    // pi/2 on sublattice A (sites 0, 2, 4, ...), the frame in which the
    // bipartite XY chain has an antisymmetric matrix.
    static PhaseFrame alternating(int n) {
        std::vector<double> t(n, 0.0);
        for (int j = 0; j < n; j += 2) t[j] = kPi / 2;
        return PhaseFrame(std::move(t));
    }

    static PhaseFrame from_mask(int n, std::uint64_t rotated) {
        std::vector<double> t(n, 0.0);
        for (int j = 0; j < n; ++j)
            if (rotated >> j & 1) t[j] = kPi / 2;
        return PhaseFrame(std::move(t));
    }

    int size() const { return static_cast<int>(thetas_.size()); }
    double theta(int j) const { return thetas_.at(j); }
    bool rotated(int j) const { return thetas_.at(j) != 0.0; }

    bool is_trivial() const {
        for (double t : thetas_)
            if (t != 0.0) return false;
        return true;
    }

    std::uint64_t rotated_mask() const {
        std::uint64_t m = 0;
        for (int j = 0; j < size(); ++j)
            if (rotated(j)) m |= std::uint64_t{1} << j;
        return m;
    }

    // Frame for the doubled register in pair-local layout: site j of either
    // copy inherits theta_j (bits 2j and 2j+1).
    PhaseFrame doubled() const {
        std::vector<double> t(2 * thetas_.size());
        for (std::size_t j = 0; j < thetas_.size(); ++j)
            t[2 * j] = t[2 * j + 1] = thetas_[j];
        return PhaseFrame(std::move(t));
    }

    bool operator==(const PhaseFrame& o) const { return thetas_ == o.thetas_; }

  private:
    std::vector<double> thetas_;
};

// Frame-basis matrix of a physical single-site Pauli operator. On rotated
// sites X -> Y and Y -> -X; Z and I are unchanged.
Mat2 pauli_in_frame(char pauli, bool rotated);

}  // namespace otoclab
