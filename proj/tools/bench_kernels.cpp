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

// Throughput comparison of the OpenMP amplitude kernels against the serial
// reference implementation.

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "otoclab/common.hpp"
#include "otoclab/kernels.hpp"

namespace {

using namespace otoclab;

Vec random_state(int qubits, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g(0.0, 1.0);
    Vec v(std::size_t{1} << qubits);
    for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = Complex{g(rng), g(rng)};
    v /= v.norm();
    return v;
}

const Mat2 kHadamard = (Mat2() << 1.0, 1.0, 1.0, -1.0).finished() / std::sqrt(2.0);

void bm_apply_single_qubit_omp(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    Vec v = random_state(n, 7);
    for (auto _ : state) {
        kernels::apply_single_qubit(v.data(), v.size(), n / 2, kHadamard);
        benchmark::DoNotOptimize(v.data());
    }
}

void bm_apply_single_qubit_serial(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    Vec v = random_state(n, 7);
    for (auto _ : state) {
        kernels::serial::apply_single_qubit(v.data(), v.size(), n / 2, kHadamard);
        benchmark::DoNotOptimize(v.data());
    }
}

void bm_pauli_accumulate_omp(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    Vec in = random_state(n, 11);
    Vec out = Vec::Zero(in.size());
    const std::uint64_t flip = 0b1011, ymask = 0b0010, zmask = 0b0100;
    for (auto _ : state) {
        kernels::pauli_accumulate(out.data(), in.data(), in.size(), flip, ymask,
                                  zmask, Complex{0.3, 0.1});
        benchmark::DoNotOptimize(out.data());
    }
}

void bm_pauli_accumulate_serial(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    Vec in = random_state(n, 11);
    Vec out = Vec::Zero(in.size());
    const std::uint64_t flip = 0b1011, ymask = 0b0010, zmask = 0b0100;
    for (auto _ : state) {
        kernels::serial::pauli_accumulate(out.data(), in.data(), in.size(),
                                          flip, ymask, zmask, Complex{0.3, 0.1});
        benchmark::DoNotOptimize(out.data());
    }
}

void bm_dot_omp(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    Vec a = random_state(n, 3), b = random_state(n, 5);
    for (auto _ : state) {
        auto d = kernels::dot(a.data(), b.data(), a.size());
        benchmark::DoNotOptimize(d);
    }
}

void bm_dot_serial(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    Vec a = random_state(n, 3), b = random_state(n, 5);
    for (auto _ : state) {
        auto d = kernels::serial::dot(a.data(), b.data(), a.size());
        benchmark::DoNotOptimize(d);
    }
}

BENCHMARK(bm_apply_single_qubit_omp)->Arg(16)->Arg(20);
BENCHMARK(bm_apply_single_qubit_serial)->Arg(16)->Arg(20);
BENCHMARK(bm_pauli_accumulate_omp)->Arg(16)->Arg(20);
BENCHMARK(bm_pauli_accumulate_serial)->Arg(16)->Arg(20);
BENCHMARK(bm_dot_omp)->Arg(16)->Arg(20);
BENCHMARK(bm_dot_serial)->Arg(16)->Arg(20);

}  // namespace

BENCHMARK_MAIN();
