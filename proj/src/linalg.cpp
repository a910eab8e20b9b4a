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

#include "otoclab/linalg.hpp"

#include <stdexcept>

#include <cblas.h>
#include <lapacke.h>

namespace otoclab::linalg {

Mat mul(const Mat& a, const Mat& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("mul: dimension mismatch");
    if (a.rows() < 128 || a.cols() < 128 || b.cols() < 128) return a * b;
    Mat c(a.rows(), b.cols());
    const Complex one{1.0, 0.0}, zero{0.0, 0.0};
    cblas_zgemm3m(CblasColMajor, CblasNoTrans, CblasNoTrans,
                  static_cast<int>(a.rows()), static_cast<int>(b.cols()),
                  static_cast<int>(a.cols()), &one, a.data(),
                  static_cast<int>(a.rows()), b.data(), static_cast<int>(b.rows()),
                  &zero, c.data(), static_cast<int>(c.rows()));
    return c;
}

Eigensystem hermitian_eig(const Mat& h) {
    if (h.rows() != h.cols()) throw std::invalid_argument("hermitian_eig: not square");
    const int n = static_cast<int>(h.rows());
    Eigensystem es;
    es.vectors = h;
    es.values.resize(n);
    const int info = LAPACKE_zheevd(
        LAPACK_COL_MAJOR, 'V', 'U', n,
        reinterpret_cast<lapack_complex_double*>(es.vectors.data()), n,
        es.values.data());
    if (info != 0) throw std::runtime_error("zheevd failed, info=" + std::to_string(info));
    return es;
}

Mat propagator_matrix(const Eigensystem& es, double t) {
    const auto n = es.vectors.rows();
    Vec phases(n);
    for (Eigen::Index k = 0; k < n; ++k)
        phases[k] = std::exp(Complex(0.0, -es.values[k] * t));
    Mat scaled = es.vectors * phases.asDiagonal();
    return mul(scaled, es.vectors.adjoint());
}

double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2)
        throw std::invalid_argument("fit_slope: need >= 2 points");
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace otoclab::linalg
