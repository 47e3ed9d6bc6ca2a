// Copyright 2026 The rqcels Authors
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

// Serial reference kernels against their OpenMP counterparts.

#include <benchmark/benchmark.h>

#include <cmath>
#include <random>
#include <vector>

#include "rqcels/kernels.hpp"

using namespace rqcels;

namespace {

struct Samples {
    std::vector<double> t;
    std::vector<Complex> y;
};

Samples make_samples(std::size_t n) {
    std::mt19937_64 rng(1);
    std::normal_distribution<double> g;
    Samples s{std::vector<double>(n), std::vector<Complex>(n)};
    for (std::size_t k = 0; k < n; ++k) {
        s.t[k] = 8.0 * g(rng);
        s.y[k] = Complex(g(rng), g(rng));
    }
    return s;
}

Eigen::MatrixXcd make_density(int n) {
    const Eigen::MatrixXcd a = Eigen::MatrixXcd::Random(1 << n, 1 << n);
    Eigen::MatrixXcd rho = a * a.adjoint();
    return rho / rho.trace();
}

template <Exec E>
void BM_FourierGrid(benchmark::State& state) {
    const auto s = make_samples(static_cast<std::size_t>(state.range(0)));
    std::vector<Complex> out(2048);
    for (auto _ : state) {
        kernels::fourier_mean_grid(E, s.t, s.y, -M_PI, 2 * M_PI / 2048, out);
        benchmark::DoNotOptimize(out.data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0) * 2048);
}

template <Exec E>
void BM_ShotAverage(benchmark::State& state) {
    std::vector<Complex> means(static_cast<std::size_t>(state.range(0)), Complex(0.3, -0.2));
    std::vector<Complex> out(means.size());
    for (auto _ : state) {
        kernels::shot_average(E, means, 500, 7, out);
        benchmark::DoNotOptimize(out.data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <Exec E>
void BM_Conjugate1q(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    Eigen::MatrixXcd rho = make_density(n);
    const kernels::Mat2 u = (Eigen::Matrix2cd() << 1, 1, 1, -1).finished() / std::sqrt(2.0);
    for (auto _ : state) {
        kernels::conjugate_1q(E, rho, n / 2, u);
        benchmark::DoNotOptimize(rho.data());
    }
}

template <Exec E>
void BM_Conjugate2q(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    Eigen::MatrixXcd rho = make_density(n);
    kernels::Mat4 u = kernels::Mat4::Zero();
    for (int k = 0; k < 4; ++k) u(k, k) = std::polar(1.0, 0.1 * (k == 0 || k == 3 ? -1 : 1));
    for (auto _ : state) {
        kernels::conjugate_2q(E, rho, 0, n - 1, u);
        benchmark::DoNotOptimize(rho.data());
    }
}

}  // namespace

BENCHMARK(BM_FourierGrid<Exec::serial>)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FourierGrid<Exec::parallel>)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_ShotAverage<Exec::serial>)->Arg(100000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ShotAverage<Exec::parallel>)->Arg(100000)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_Conjugate1q<Exec::serial>)->Arg(7)->Arg(9)->Arg(11)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_Conjugate1q<Exec::parallel>)->Arg(7)->Arg(9)->Arg(11)->Unit(benchmark::kMicrosecond)->UseRealTime();
BENCHMARK(BM_Conjugate2q<Exec::serial>)->Arg(7)->Arg(9)->Arg(11)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_Conjugate2q<Exec::parallel>)->Arg(7)->Arg(9)->Arg(11)->Unit(benchmark::kMicrosecond)->UseRealTime();

BENCHMARK_MAIN();
