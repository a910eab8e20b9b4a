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

#include "otoclab/pauli.hpp"

#include <bit>
#include <cmath>
#include <map>
#include <stdexcept>

#include "json.hpp"

#include "otoclab/kernels.hpp"

namespace otoclab {

namespace {

void check_symbols(const std::string& ops) {
    for (char c : ops)
        if (c != 'I' && c != 'X' && c != 'Y' && c != 'Z')
            throw std::invalid_argument("invalid Pauli symbol in '" + ops + "'");
}

std::string identity_ops(int n) { return std::string(n, 'I'); }

}  // namespace

int PauliString::y_parity() const {
    int p = 0;
    for (char c : ops) p ^= (c == 'Y');
    return p;
}

PauliMasks pauli_masks(const PauliString& p) {
    check_symbols(p.ops);
    PauliMasks m;
    int ny = 0;
    for (int j = 0; j < p.num_qubits(); ++j) {
        const std::uint64_t bit = std::uint64_t{1} << j;
        switch (p.ops[j]) {
            case 'X': m.flip |= bit; break;
            case 'Y': m.flip |= bit; m.ymask |= bit; ++ny; break;
            case 'Z': m.zmask |= bit; break;
            default: break;
        }
    }
    // (-i)^{#Y} together with the per-index sign (-1)^{popcount(x & (Y|Z))}
    // reproduces <x|P|x^flip>.
    const Complex minus_i{0.0, -1.0};
    Complex base{p.coeff, 0.0};
    for (int k = 0; k < (ny & 3); ++k) base *= minus_i;
    m.base = base;
    return m;
}

HamiltonianSpec& HamiltonianSpec::operator+=(const HamiltonianSpec& other) {
    if (num_qubits != other.num_qubits)
        throw std::invalid_argument("HamiltonianSpec: size mismatch in +=");
    terms.insert(terms.end(), other.terms.begin(), other.terms.end());
    return *this;
}

HamiltonianSpec HamiltonianSpec::scaled(double factor) const {
    HamiltonianSpec out = *this;
    for (auto& t : out.terms) t.coeff *= factor;
    return out;
}

HamiltonianSpec build_xy_chain(int n, double j_coupling, ChainPart part) {
    if (n < 2) throw std::invalid_argument("build_xy_chain: n must be >= 2");
    HamiltonianSpec h;
    h.num_qubits = n;
    h.coupling = j_coupling;
    h.sublattice.resize(n);
    for (int s = 0; s < n; ++s) h.sublattice[s] = (s % 2 == 0) ? 'A' : 'B';
    auto wanted = [&](int i, int j) {
        const bool ia = h.sublattice[i] == 'A', ja = h.sublattice[j] == 'A';
        switch (part) {
            case ChainPart::AB: return ia != ja;
            case ChainPart::AA: return ia && ja;
            case ChainPart::BB: return !ia && !ja;
        }
        return false;
    };
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            if (!wanted(i, j)) continue;
            const double r = j - i;
            const double c = j_coupling / (r * r * r);
            for (char op : {'X', 'Y'}) {
                PauliString p{identity_ops(n), c};
                p.ops[i] = op;
                p.ops[j] = op;
                h.terms.push_back(std::move(p));
            }
        }
    return h;
}

HamiltonianSpec build_intercopy_coupling(int n, double j_coupling) {
    if (n < 1) throw std::invalid_argument("build_intercopy_coupling: n must be >= 1");
    HamiltonianSpec h;
    h.num_qubits = 2 * n;
    h.coupling = j_coupling;
    for (int site = 0; site < n; ++site)
        for (char op : {'X', 'Y'}) {
            PauliString p{identity_ops(2 * n), j_coupling};
            p.ops[2 * site] = op;      // copy 1
            p.ops[2 * site + 1] = op;  // copy 2
            h.terms.push_back(std::move(p));
        }
    return h;
}

HamiltonianSpec on_doubled_register(const HamiltonianSpec& h, int copy) {
    if (copy != 0 && copy != 1)
        throw std::invalid_argument("on_doubled_register: copy must be 0 or 1");
    HamiltonianSpec out;
    out.num_qubits = 2 * h.num_qubits;
    out.coupling = h.coupling;
    for (const auto& t : h.terms) {
        PauliString p{identity_ops(out.num_qubits), t.coeff};
        for (int j = 0; j < h.num_qubits; ++j) p.ops[2 * j + copy] = t.ops[j];
        out.terms.push_back(std::move(p));
    }
    return out;
}

HamiltonianSpec conjugate_by_frame(const HamiltonianSpec& h, const PhaseFrame& frame) {
    if (frame.size() != h.num_qubits)
        throw std::invalid_argument("conjugate_by_frame: frame size mismatch");
    HamiltonianSpec out = h;
    for (auto& t : out.terms) {
        check_symbols(t.ops);
        for (int j = 0; j < h.num_qubits; ++j) {
            if (!frame.rotated(j)) continue;
            if (t.ops[j] == 'X') {
                t.ops[j] = 'Y';
            } else if (t.ops[j] == 'Y') {
                t.ops[j] = 'X';
                t.coeff = -t.coeff;
            }
        }
    }
    return out;
}

AntisymmetryReport antisymmetry_report(const HamiltonianSpec& h, const PhaseFrame& frame) {
    const HamiltonianSpec hf = conjugate_by_frame(h, frame);
    std::map<std::string, double> combined;
    for (const auto& t : hf.terms) combined[t.ops] += t.coeff;
    AntisymmetryReport rep;
    rep.holds = true;
    for (const auto& [ops, coeff] : combined) {
        if (std::abs(coeff) < 1e-15) continue;
        if (PauliString{ops, coeff}.y_parity() == 0) {
            rep.holds = false;
            rep.max_violation += std::abs(coeff);
        }
    }
    return rep;
}

std::optional<PhaseFrame> find_phase_frame(const HamiltonianSpec& h) {
    if (h.num_qubits > 16)
        throw std::invalid_argument("find_phase_frame: exhaustive search limited to n <= 16");
    struct TermMasks {
        std::uint64_t xmask = 0, ymask = 0;
    };
    std::vector<TermMasks> tm;
    for (const auto& t : h.terms) {
        if (t.coeff == 0.0) continue;
        check_symbols(t.ops);
        TermMasks m;
        for (int j = 0; j < t.num_qubits(); ++j) {
            if (t.ops[j] == 'X') m.xmask |= std::uint64_t{1} << j;
            if (t.ops[j] == 'Y') m.ymask |= std::uint64_t{1} << j;
        }
        tm.push_back(m);
    }
    const std::uint64_t limit = std::uint64_t{1} << h.num_qubits;
    for (std::uint64_t f = 0; f < limit; ++f) {
        bool ok = true;
        for (const auto& m : tm) {
            // Y parity after conjugation: Y survives off rotated sites,
            // X turns into Y on rotated sites.
            const std::uint64_t y_after = (m.ymask & ~f) | (m.xmask & f);
            if ((std::popcount(y_after) & 1) == 0) {
                ok = false;
                break;
            }
        }
        if (ok) return PhaseFrame::from_mask(h.num_qubits, f);
    }
    return std::nullopt;
}

Mat dense_matrix(const HamiltonianSpec& h, const PhaseFrame& frame) {
    if (2 * h.num_qubits > kMaxQubits)
        throw std::invalid_argument("dense_matrix: dimension over memory budget");
    const HamiltonianSpec hf = conjugate_by_frame(h, frame);
    const std::size_t d = std::size_t{1} << h.num_qubits;
    Mat m = Mat::Zero(d, d);
    for (const auto& t : hf.terms) {
        const PauliMasks pm = pauli_masks(t);
        const std::uint64_t sign_mask = pm.ymask | pm.zmask;
        for (std::size_t c = 0; c < d; ++c) {
            const std::size_t r = c ^ pm.flip;
            m(r, c) += (std::popcount(r & sign_mask) & 1) ? -pm.base : pm.base;
        }
    }
    return m;
}

void apply_terms(const std::vector<PauliString>& terms, const Complex* in,
                 Complex* out, std::size_t n, Complex scale) {
    for (const auto& t : terms) {
        const PauliMasks pm = pauli_masks(t);
        kernels::pauli_accumulate(out, in, n, pm.flip, pm.ymask, pm.zmask,
                                  scale * pm.base);
    }
}

double coefficient_norm(const HamiltonianSpec& h) {
    double s = 0.0;
    for (const auto& t : h.terms) s += std::abs(t.coeff);
    return s;
}

std::string hamiltonian_to_json(const HamiltonianSpec& h) {
    nlohmann::json j;
    j["num_qubits"] = h.num_qubits;
    j["terms"] = nlohmann::json::array();
    for (const auto& t : h.terms)
        j["terms"].push_back({{"paulis", t.ops}, {"coeff", t.coeff}});
    nlohmann::json meta;
    if (!h.sublattice.empty()) meta["sublattice"] = h.sublattice;
    meta["J"] = h.coupling;
    j["metadata"] = meta;
    return j.dump(2);
}

HamiltonianSpec hamiltonian_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument(std::string("hamiltonian JSON parse error: ") + e.what());
    }
    HamiltonianSpec h;
    if (!j.contains("num_qubits") || !j["num_qubits"].is_number_integer())
        throw std::invalid_argument("hamiltonian JSON: missing integer 'num_qubits'");
    h.num_qubits = j["num_qubits"].get<int>();
    if (!j.contains("terms") || !j["terms"].is_array())
        throw std::invalid_argument("hamiltonian JSON: missing array 'terms'");
    for (const auto& jt : j["terms"]) {
        PauliString p;
        p.ops = jt.at("paulis").get<std::string>();
        p.coeff = jt.at("coeff").get<double>();
        check_symbols(p.ops);
        if (p.num_qubits() != h.num_qubits)
            throw std::invalid_argument("hamiltonian JSON: term '" + p.ops +
                                        "' length != num_qubits");
        if (!std::isfinite(p.coeff))
            throw std::invalid_argument("hamiltonian JSON: non-finite coefficient");
        h.terms.push_back(std::move(p));
    }
    if (j.contains("metadata")) {
        const auto& meta = j["metadata"];
        if (meta.contains("sublattice")) h.sublattice = meta["sublattice"].get<std::string>();
        if (meta.contains("J")) h.coupling = meta["J"].get<double>();
    }
    return h;
}

}  // namespace otoclab
