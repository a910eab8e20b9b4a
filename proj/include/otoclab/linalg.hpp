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

#include "otoclab/common.hpp"

namespace otoclab::linalg {

// C = A * B through BLAS (zgemm3m) for large matrices, Eigen otherwise.
Mat mul(const Mat& a, const Mat& b);

struct Eigensystem {
    Mat vectors;   // columns are eigenvectors
    RVec values;
};

// Eigendecomposition of a Hermitian matrix (LAPACK zheevd).
Eigensystem hermitian_eig(const Mat& h);

// exp(-i H t) from a precomputed eigendecomposition.
Mat propagator_matrix(const Eigensystem& es, double t);

// Least-squares slope of y against x.
double fit_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace otoclab::linalg
