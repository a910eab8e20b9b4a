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

#include "otoclab/evolution.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

#include "otoclab/kernels.hpp"

namespace otoclab {

namespace {

// Target for the accumulated RK4 truncation error of evolve_full; the step
// is chosen so that (norm*dt)^4 * norm * |t| / 120 stays below this.
constexpr double kRk4ErrorBudget = 1e-9;

Mat dense_from_terms(const std::vector<PauliString>& terms, int num_qubits) {
    const std::size_t d = std::size_t{1} << num_qubits;
    Mat m = Mat::Zero(d, d);
    for (const auto& t : terms) {
        const PauliMasks pm = pauli_masks(t);
        const std::uint64_t sign_mask = pm.ymask | pm.zmask;
        for (std::size_t c = 0; c < d; ++c) {
            const std::size_t r = c ^ pm.flip;
            m(r, c) += (std::popcount(r & sign_mask) & 1) ? -pm.base : pm.base;
        }
    }
    return m;
}

// psi <- V e^{-i lambda t} V^dagger psi without forming the propagator.
void apply_propagator(const linalg::Eigensystem& es, double t, Vec& psi) {
    Vec modes = es.vectors.adjoint() * psi;
    for (Eigen::Index k = 0; k < modes.size(); ++k)
        modes[k] *= std::exp(Complex{0.0, -es.values[k] * t});
    psi = es.vectors * modes;
}

int rk4_steps(double term_norm, double t, double dt_override) {
    if (dt_override > 0.0)
        return std::max(1, static_cast<int>(std::ceil(std::abs(t) / dt_override)));
    if (term_norm <= 0.0 || t == 0.0) return 1;
    const double x =
        std::pow(120.0 * kRk4ErrorBudget / (term_norm * std::abs(t)), 0.25);
    return std::max(1, static_cast<int>(std::ceil(term_norm * std::abs(t) / x)));
}

}  // namespace

double rk4_suggested_dt(const Propagator& p, double t, double error_budget) {
    if (p.dense() || p.term_norm <= 0.0 || t == 0.0 || error_budget <= 0.0)
        return 0.0;
    const double x =
        std::pow(120.0 * error_budget / (p.term_norm * std::abs(t)), 0.25);
    return x / p.term_norm;
}

Propagator make_propagator(const HamiltonianSpec& h, const PhaseFrame& frame,
                           std::size_t dense_limit) {
    if (frame.size() != h.num_qubits)
        throw std::invalid_argument("make_propagator: frame size mismatch");
    if (h.num_qubits > kMaxQubits)
        throw std::invalid_argument("make_propagator: register too large");
    Propagator p;
    p.num_qubits = h.num_qubits;
    p.frame = frame;
    p.frame_terms = conjugate_by_frame(h, frame).terms;
    p.term_norm = coefficient_norm(h);
    if (p.dim() <= dense_limit)
        p.eig = linalg::hermitian_eig(dense_from_terms(p.frame_terms, p.num_qubits));
    return p;
}

void evolve_full(StateVector& state, const Propagator& p, double t,
                 double dt_override) {
    if (state.num_qubits != p.num_qubits || !(state.frame == p.frame))
        throw std::invalid_argument("evolve_full: state/propagator mismatch");
    if (t == 0.0) return;
    if (p.dense()) {
        apply_propagator(*p.eig, t, state.amps);
        return;
    }
    const std::size_t d = state.dim();
    const int steps = rk4_steps(p.term_norm, t, dt_override);
    const double dt = t / steps;
    const Complex mi{0.0, -1.0};  // Schroedinger right-hand side is -iH psi
    Vec k1 = Vec::Zero(d), k2 = Vec::Zero(d), k3 = Vec::Zero(d), k4 = Vec::Zero(d);
    Vec stage(d);
    Vec& psi = state.amps;
    for (int s = 0; s < steps; ++s) {
        k1.setZero();
        apply_terms(p.frame_terms, psi.data(), k1.data(), d, mi);
        stage = psi + (0.5 * dt) * k1;
        k2.setZero();
        apply_terms(p.frame_terms, stage.data(), k2.data(), d, mi);
        stage = psi + (0.5 * dt) * k2;
        k3.setZero();
        apply_terms(p.frame_terms, stage.data(), k3.data(), d, mi);
        stage = psi + dt * k3;
        k4.setZero();
        apply_terms(p.frame_terms, stage.data(), k4.data(), d, mi);
        psi += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
}

void evolve_doubled_product(StateVector& state, const Propagator& u1, double t1,
                            const Propagator& u2, double t2) {
    if (u1.num_qubits != u2.num_qubits || !(u1.frame == u2.frame))
        throw std::invalid_argument("evolve_doubled_product: copy mismatch");
    if (state.num_qubits != 2 * u1.num_qubits ||
        !(state.frame == u1.frame.doubled()))
        throw std::invalid_argument("evolve_doubled_product: state mismatch");
    if (!u1.dense() || !u2.dense())
        throw std::invalid_argument(
            "evolve_doubled_product: needs dense propagators; evolve the "
            "joint register with evolve_full instead");
    Mat m = gather_matrix(state);
    if (t1 != 0.0) m = linalg::mul(linalg::propagator_matrix(*u1.eig, t1), m);
    if (t2 != 0.0)
        m = linalg::mul(m, linalg::propagator_matrix(*u2.eig, t2).transpose());
    scatter_matrix(m, state);
}

void evolve_doubled_product(StateVector& state, const Propagator& u, double t) {
    evolve_doubled_product(state, u, t, u, t);
}

double DensityMatrix::trace_real() const { return rho.trace().real(); }

DensityMatrix pure_density(const StateVector& s) {
    DensityMatrix d;
    d.num_qubits = s.num_qubits;
    d.frame = s.frame;
    d.rho = s.amps * s.amps.adjoint();
    return d;
}

double hermiticity_error(const DensityMatrix& rho) {
    return (rho.rho - rho.rho.adjoint()).cwiseAbs().maxCoeff();
}

double min_eigenvalue(const DensityMatrix& rho) {
    Eigen::SelfAdjointEigenSolver<Mat> solver(rho.rho,
                                              Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

namespace {

// out += gamma * sum_j ( s_j rho s_j^+ - {s_j^+ s_j, rho}/2 ), elementwise:
// the gain term copies from the j-excited entry, the loss term weights by
// the number of set jump bits in row and column indices.
void add_dissipator(Mat& out, const Mat& rho, int num_qubits,
                    std::uint64_t mask, double gamma) {
    const std::size_t d = std::size_t{1} << num_qubits;
    const std::uint64_t jm = mask & (d - 1);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t ci = 0; ci < static_cast<std::ptrdiff_t>(d); ++ci) {
        const std::uint64_t c = static_cast<std::uint64_t>(ci);
        for (std::uint64_t r = 0; r < d; ++r) {
            const int loss = std::popcount(r & jm) + std::popcount(c & jm);
            Complex acc = -0.5 * loss * rho(r, c);
            std::uint64_t open = jm & ~r & ~c;
            while (open) {
                const std::uint64_t b = open & (~open + 1);
                acc += rho(r | b, c | b);
                open &= open - 1;
            }
            out(r, c) += gamma * acc;
        }
    }
}

// Lindblad right-hand side. Assumes rho Hermitian, which every RK4 stage
// input preserves, so rho H = (H rho)^dagger saves a product.
void lindblad_rhs(Mat& out, const Mat& rho, const Mat& h, int num_qubits,
                  std::uint64_t mask, double gamma) {
    const Mat hr = linalg::mul(h, rho);
    out = Complex{0.0, -1.0} * (hr - hr.adjoint());
    if (gamma != 0.0) add_dissipator(out, rho, num_qubits, mask, gamma);
}

LindbladReport lindblad_run(Mat& rho, const Mat& h, int num_qubits,
                            std::uint64_t mask, double gamma, double t,
                            double dt, double trace_tol) {
    const int steps = std::max(1, static_cast<int>(std::ceil(std::abs(t) / dt)));
    const double step = t / steps;
    LindbladReport rep;
    Mat k1, k2, k3, k4, stage;
    for (int s = 0; s < steps; ++s) {
        lindblad_rhs(k1, rho, h, num_qubits, mask, gamma);
        stage = rho + (0.5 * step) * k1;
        lindblad_rhs(k2, stage, h, num_qubits, mask, gamma);
        stage = rho + (0.5 * step) * k2;
        lindblad_rhs(k3, stage, h, num_qubits, mask, gamma);
        stage = rho + step * k3;
        lindblad_rhs(k4, stage, h, num_qubits, mask, gamma);
        rho += (step / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        const double drift = std::abs(rho.trace().real() - 1.0);
        if (drift > rep.trace_drift) rep.trace_drift = drift;
        if (rep.trace_drift > trace_tol)
            throw std::runtime_error("lindblad_evolve: trace drift " +
                                     std::to_string(rep.trace_drift) +
                                     " exceeds tolerance; reduce dt");
    }
    return rep;
}

}  // namespace

LindbladReport lindblad_evolve(DensityMatrix& rho, const Propagator& h,
                               double gamma, double t,
                               const LindbladOptions& opt) {
    if (rho.num_qubits != h.num_qubits || !(rho.frame == h.frame))
        throw std::invalid_argument("lindblad_evolve: rho/propagator mismatch");
    if (opt.dt <= 0.0) throw std::invalid_argument("lindblad_evolve: dt must be > 0");
    if (hermiticity_error(rho) > 1e-10)
        throw std::invalid_argument("lindblad_evolve: rho must be Hermitian");
    if (t == 0.0) return {};
    const Mat hmat = dense_from_terms(h.frame_terms, h.num_qubits);
    if (opt.halving_check) {
        Mat fine = rho.rho;
        LindbladReport rep = lindblad_run(rho.rho, hmat, rho.num_qubits,
                                          opt.jump_mask, gamma, t, opt.dt,
                                          opt.trace_tol);
        lindblad_run(fine, hmat, rho.num_qubits, opt.jump_mask, gamma, t,
                     opt.dt / 2.0, opt.trace_tol);
        rep.halving_error = (rho.rho - fine).cwiseAbs().maxCoeff();
        rho.rho = std::move(fine);
        return rep;
    }
    return lindblad_run(rho.rho, hmat, rho.num_qubits, opt.jump_mask, gamma, t,
                        opt.dt, opt.trace_tol);
}

double expectation_vvt(const DensityMatrix& rho, const LocalObservable& v) {
    if (rho.num_qubits % 2 != 0)
        throw std::invalid_argument("expectation_vvt: needs a doubled register");
    const int bit1 = bit_of(v.site, 0);
    const int bit2 = bit_of(v.site, 1);
    const Mat2 vt = v.matrix.transpose();
    const std::size_t d = rho.dim();
    // Tr(rho A) with A = V_{bit1} V^T_{bit2}: sum over the sparse rows of A.
    Complex acc{0.0, 0.0};
    const std::uint64_t b1 = std::uint64_t{1} << bit1;
    const std::uint64_t b2 = std::uint64_t{1} << bit2;
    for (std::uint64_t r = 0; r < d; ++r) {
        const int i1 = (r & b1) ? 1 : 0;
        const int i2 = (r & b2) ? 1 : 0;
        for (int j1 = 0; j1 < 2; ++j1)
            for (int j2 = 0; j2 < 2; ++j2) {
                const Complex a = v.matrix(i1, j1) * vt(i2, j2);
                if (a == Complex{0.0, 0.0}) continue;
                const std::uint64_t col =
                    (r & ~(b1 | b2)) | (j1 ? b1 : 0) | (j2 ? b2 : 0);
                acc += a * rho.rho(col, r);
            }
    }
    if (std::abs(acc.imag()) > 1e-8)
        throw std::runtime_error("expectation_vvt: non-real expectation");
    return acc.real();
}

}  // namespace otoclab
