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

#include "otoclab/kernels.hpp"

#include <bit>

namespace otoclab::kernels {

namespace {

inline int parity(std::uint64_t v) { return std::popcount(v) & 1; }

// Expand a group index into a full index with `bit` cleared.
inline std::size_t insert_zero_bit(std::size_t g, int bit) {
    const std::size_t low = g & ((std::size_t{1} << bit) - 1);
    return ((g >> bit) << (bit + 1)) | low;
}

// Full index with two bits (bit_a < bit_b) cleared.
inline std::size_t insert_two_zero_bits(std::size_t g, int lo, int hi) {
    return insert_zero_bit(insert_zero_bit(g, lo), hi);
}

}  // namespace

// ---------------------------------------------------------------------------
// serial reference
// ---------------------------------------------------------------------------
namespace serial {

void apply_single_qubit(Complex* amps, std::size_t n, int bit, const Mat2& u) {
    const std::size_t stride = std::size_t{1} << bit;
    const Complex u00 = u(0, 0), u01 = u(0, 1), u10 = u(1, 0), u11 = u(1, 1);
    for (std::size_t g = 0; g < n / 2; ++g) {
        const std::size_t i0 = insert_zero_bit(g, bit);
        const std::size_t i1 = i0 | stride;
        const Complex a0 = amps[i0], a1 = amps[i1];
        amps[i0] = u00 * a0 + u01 * a1;
        amps[i1] = u10 * a0 + u11 * a1;
    }
}

void pauli_accumulate(Complex* out, const Complex* in, std::size_t n,
                      std::uint64_t flip, std::uint64_t ymask,
                      std::uint64_t zmask, Complex base) {
    const std::uint64_t sign_mask = ymask | zmask;
    for (std::size_t j = 0; j < n; ++j) {
        const Complex phase = parity(j & sign_mask) ? -base : base;
        out[j] += phase * in[j ^ flip];
    }
}

Complex dot(const Complex* a, const Complex* b, std::size_t n) {
    Complex s{0.0, 0.0};
    for (std::size_t i = 0; i < n; ++i) s += std::conj(a[i]) * b[i];
    return s;
}

double norm2(const Complex* a, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += std::norm(a[i]);
    return s;
}

Complex expectation_two_site(const Complex* amps, std::size_t n, int bit_a,
                             const Mat2& a, int bit_b, const Mat2& b) {
    const int lo = bit_a < bit_b ? bit_a : bit_b;
    const int hi = bit_a < bit_b ? bit_b : bit_a;
    const std::size_t sa = std::size_t{1} << bit_a;
    const std::size_t sb = std::size_t{1} << bit_b;
    Complex acc{0.0, 0.0};
    for (std::size_t g = 0; g < n / 4; ++g) {
        const std::size_t i00 = insert_two_zero_bits(g, lo, hi);
        Complex v[4], w[4];
        for (int s = 0; s < 2; ++s)
            for (int t = 0; t < 2; ++t)
                v[2 * s + t] = amps[i00 | (s ? sa : 0) | (t ? sb : 0)];
        for (int s = 0; s < 2; ++s)
            for (int t = 0; t < 2; ++t) {
                Complex x{0.0, 0.0};
                for (int sp = 0; sp < 2; ++sp)
                    for (int tp = 0; tp < 2; ++tp)
                        x += a(s, sp) * b(t, tp) * v[2 * sp + tp];
                w[2 * s + t] = x;
            }
        for (int k = 0; k < 4; ++k) acc += std::conj(v[k]) * w[k];
    }
    return acc;
}

std::array<double, 4> joint_probabilities(const Complex* amps, std::size_t n,
                                          int bit_a, const Mat2& u1, int bit_b,
                                          const Mat2& u2) {
    const int lo = bit_a < bit_b ? bit_a : bit_b;
    const int hi = bit_a < bit_b ? bit_b : bit_a;
    const std::size_t sa = std::size_t{1} << bit_a;
    const std::size_t sb = std::size_t{1} << bit_b;
    std::array<double, 4> prob{0.0, 0.0, 0.0, 0.0};
    for (std::size_t g = 0; g < n / 4; ++g) {
        const std::size_t i00 = insert_two_zero_bits(g, lo, hi);
        Complex v[4];
        for (int s = 0; s < 2; ++s)
            for (int t = 0; t < 2; ++t)
                v[2 * s + t] = amps[i00 | (s ? sa : 0) | (t ? sb : 0)];
        for (int p = 0; p < 2; ++p)
            for (int q = 0; q < 2; ++q) {
                Complex c{0.0, 0.0};
                for (int s = 0; s < 2; ++s)
                    for (int t = 0; t < 2; ++t)
                        c += std::conj(u1(s, p)) * std::conj(u2(t, q)) * v[2 * s + t];
                prob[2 * p + q] += std::norm(c);
            }
    }
    return prob;
}

Complex trace_rvrv(const Mat& r, int bit, const Mat2& v) {
    const std::size_t dim = static_cast<std::size_t>(r.rows());
    const std::size_t half = dim / 2;
    const std::size_t stride = std::size_t{1} << bit;
    Complex acc{0.0, 0.0};
    for (std::size_t xg = 0; xg < half; ++xg) {
        const std::size_t x0 = insert_zero_bit(xg, bit);
        for (std::size_t yg = 0; yg < half; ++yg) {
            const std::size_t y0 = insert_zero_bit(yg, bit);
            for (int s = 0; s < 2; ++s)
                for (int t = 0; t < 2; ++t) {
                    const std::size_t x = x0 | (s ? stride : 0);
                    const std::size_t y = y0 | (t ? stride : 0);
                    Complex inner{0.0, 0.0};
                    for (int b = 0; b < 2; ++b)
                        for (int c = 0; c < 2; ++c)
                            inner += v(t, b) * r(y0 | (b ? stride : 0), x0 | (c ? stride : 0)) * v(c, s);
                    acc += r(x, y) * inner;
                }
        }
    }
    return acc;
}

}  // namespace serial

// ---------------------------------------------------------------------------
// OpenMP versions
// ---------------------------------------------------------------------------

void apply_single_qubit(Complex* amps, std::size_t n, int bit, const Mat2& u) {
    const std::size_t stride = std::size_t{1} << bit;
    const std::size_t groups = n / 2;
    const Complex u00 = u(0, 0), u01 = u(0, 1), u10 = u(1, 0), u11 = u(1, 1);
#pragma omp parallel for schedule(static)
    for (std::size_t g = 0; g < groups; ++g) {
        const std::size_t i0 = insert_zero_bit(g, bit);
        const std::size_t i1 = i0 | stride;
        const Complex a0 = amps[i0], a1 = amps[i1];
        amps[i0] = u00 * a0 + u01 * a1;
        amps[i1] = u10 * a0 + u11 * a1;
    }
}

void pauli_accumulate(Complex* out, const Complex* in, std::size_t n,
                      std::uint64_t flip, std::uint64_t ymask,
                      std::uint64_t zmask, Complex base) {
    const std::uint64_t sign_mask = ymask | zmask;
#pragma omp parallel for schedule(static)
    for (std::size_t j = 0; j < n; ++j) {
        const Complex phase = parity(j & sign_mask) ? -base : base;
        out[j] += phase * in[j ^ flip];
    }
}

void pauli_mul_left(Complex* out, const Complex* rho, std::size_t dim,
                    std::uint64_t flip, std::uint64_t ymask,
                    std::uint64_t zmask, Complex base) {
    const std::uint64_t sign_mask = ymask | zmask;
#pragma omp parallel for schedule(static)
    for (std::size_t c = 0; c < dim; ++c) {
        Complex* out_col = out + c * dim;
        const Complex* rho_col = rho + c * dim;
        for (std::size_t r = 0; r < dim; ++r) {
            const Complex phase = parity(r & sign_mask) ? -base : base;
            out_col[r] += phase * rho_col[r ^ flip];
        }
    }
}

void pauli_mul_right(Complex* out, const Complex* rho, std::size_t dim,
                     std::uint64_t flip, std::uint64_t ymask,
                     std::uint64_t zmask, Complex base) {
    const std::uint64_t sign_mask = ymask | zmask;
#pragma omp parallel for schedule(static)
    for (std::size_t c = 0; c < dim; ++c) {
        // (rho P)_{rc} = P_{c^flip, c} rho_{r, c^flip}
        const std::size_t cs = c ^ flip;
        const Complex phase = parity(cs & sign_mask) ? -base : base;
        Complex* out_col = out + c * dim;
        const Complex* rho_col = rho + cs * dim;
        for (std::size_t r = 0; r < dim; ++r) out_col[r] += phase * rho_col[r];
    }
}

namespace {

// Fixed-chunk deterministic reduction: chunk boundaries depend only on n,
// never on the thread count.
template <typename Part, typename T>
T chunked_reduce(std::size_t n_items, T init, Part partial) {
    const std::size_t nchunks =
        n_items < kReductionChunks ? (n_items ? n_items : 1) : kReductionChunks;
    std::vector<T> parts(nchunks, init);
#pragma omp parallel for schedule(static)
    for (std::size_t c = 0; c < nchunks; ++c) {
        const std::size_t begin = n_items * c / nchunks;
        const std::size_t end = n_items * (c + 1) / nchunks;
        parts[c] = partial(begin, end);
    }
    T total = init;
    for (const T& p : parts) total += p;
    return total;
}

}  // namespace

Complex dot(const Complex* a, const Complex* b, std::size_t n) {
    return chunked_reduce(n, Complex{0.0, 0.0},
                          [&](std::size_t lo, std::size_t hi) {
                              Complex s{0.0, 0.0};
                              for (std::size_t i = lo; i < hi; ++i)
                                  s += std::conj(a[i]) * b[i];
                              return s;
                          });
}

double norm2(const Complex* a, std::size_t n) {
    return chunked_reduce(n, 0.0, [&](std::size_t lo, std::size_t hi) {
        double s = 0.0;
        for (std::size_t i = lo; i < hi; ++i) s += std::norm(a[i]);
        return s;
    });
}

Complex expectation_two_site(const Complex* amps, std::size_t n, int bit_a,
                             const Mat2& a, int bit_b, const Mat2& b) {
    const int lo_bit = bit_a < bit_b ? bit_a : bit_b;
    const int hi_bit = bit_a < bit_b ? bit_b : bit_a;
    const std::size_t sa = std::size_t{1} << bit_a;
    const std::size_t sb = std::size_t{1} << bit_b;
    return chunked_reduce(
        n / 4, Complex{0.0, 0.0}, [&](std::size_t glo, std::size_t ghi) {
            Complex acc{0.0, 0.0};
            for (std::size_t g = glo; g < ghi; ++g) {
                const std::size_t i00 = insert_two_zero_bits(g, lo_bit, hi_bit);
                Complex v[4];
                for (int s = 0; s < 2; ++s)
                    for (int t = 0; t < 2; ++t)
                        v[2 * s + t] = amps[i00 | (s ? sa : 0) | (t ? sb : 0)];
                for (int s = 0; s < 2; ++s)
                    for (int t = 0; t < 2; ++t) {
                        Complex x{0.0, 0.0};
                        for (int sp = 0; sp < 2; ++sp)
                            for (int tp = 0; tp < 2; ++tp)
                                x += a(s, sp) * b(t, tp) * v[2 * sp + tp];
                        acc += std::conj(v[2 * s + t]) * x;
                    }
            }
            return acc;
        });
}

namespace {
struct Prob4 {
    std::array<double, 4> p{0.0, 0.0, 0.0, 0.0};
    Prob4& operator+=(const Prob4& o) {
        for (int i = 0; i < 4; ++i) p[i] += o.p[i];
        return *this;
    }
};
}  // namespace

std::array<double, 4> joint_probabilities(const Complex* amps, std::size_t n,
                                          int bit_a, const Mat2& u1, int bit_b,
                                          const Mat2& u2) {
    const int lo_bit = bit_a < bit_b ? bit_a : bit_b;
    const int hi_bit = bit_a < bit_b ? bit_b : bit_a;
    const std::size_t sa = std::size_t{1} << bit_a;
    const std::size_t sb = std::size_t{1} << bit_b;
    Prob4 total = chunked_reduce(
        n / 4, Prob4{}, [&](std::size_t glo, std::size_t ghi) {
            Prob4 acc;
            for (std::size_t g = glo; g < ghi; ++g) {
                const std::size_t i00 = insert_two_zero_bits(g, lo_bit, hi_bit);
                Complex v[4];
                for (int s = 0; s < 2; ++s)
                    for (int t = 0; t < 2; ++t)
                        v[2 * s + t] = amps[i00 | (s ? sa : 0) | (t ? sb : 0)];
                for (int p = 0; p < 2; ++p)
                    for (int q = 0; q < 2; ++q) {
                        Complex c{0.0, 0.0};
                        for (int s = 0; s < 2; ++s)
                            for (int t = 0; t < 2; ++t)
                                c += std::conj(u1(s, p)) * std::conj(u2(t, q)) *
                                     v[2 * s + t];
                        acc.p[2 * p + q] += std::norm(c);
                    }
            }
            return acc;
        });
    return total.p;
}

Complex trace_rvrv(const Mat& r, int bit, const Mat2& v) {
    const std::size_t half = static_cast<std::size_t>(r.rows()) / 2;
    const std::size_t stride = std::size_t{1} << bit;
    return chunked_reduce(
        half, Complex{0.0, 0.0}, [&](std::size_t xlo, std::size_t xhi) {
            Complex acc{0.0, 0.0};
            for (std::size_t xg = xlo; xg < xhi; ++xg) {
                const std::size_t x0 = insert_zero_bit(xg, bit);
                const std::size_t x1 = x0 | stride;
                for (std::size_t yg = 0; yg < half; ++yg) {
                    const std::size_t y0 = insert_zero_bit(yg, bit);
                    const std::size_t y1 = y0 | stride;
                    const Complex r00 = r(y0, x0), r01 = r(y0, x1);
                    const Complex r10 = r(y1, x0), r11 = r(y1, x1);
                    for (int s = 0; s < 2; ++s) {
                        const std::size_t x = s ? x1 : x0;
                        for (int t = 0; t < 2; ++t) {
                            const std::size_t y = t ? y1 : y0;
                            Complex inner =
                                v(t, 0) * (r00 * v(0, s) + r01 * v(1, s)) +
                                v(t, 1) * (r10 * v(0, s) + r11 * v(1, s));
                            acc += r(x, y) * inner;
                        }
                    }
                }
            }
            return acc;
        });
}

}  // namespace otoclab::kernels
