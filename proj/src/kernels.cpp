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

#include "rqcels/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace rqcels {

int kernel_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

void set_kernel_threads(int threads) {
#ifdef _OPENMP
    if (threads > 0) omp_set_num_threads(threads);
#else
    (void)threads;
#endif
}

namespace kernels {

namespace {

// Grid points per OpenMP work item. Fixed so results are thread-count invariant.
constexpr std::ptrdiff_t kGridBlock = 256;
constexpr std::ptrdiff_t kRowBlock = 8;

void shot_average_one(std::span<const Complex> means, long long shots, Seed seed, std::span<Complex> out,
                      std::size_t n) {
    Engine re = make_engine(derive_seed(seed, {stream::kReal, n}));
    Engine im = make_engine(derive_seed(seed, {stream::kImag, n}));
    out[n] = Complex(draw_shot_mean(means[n].real(), shots, re), draw_shot_mean(means[n].imag(), shots, im));
}

void fourier_block(std::span<const double> t, std::span<const Complex> y, double theta0, double step,
                   std::span<Complex> out, std::ptrdiff_t begin, std::ptrdiff_t end) {
    const std::size_t m = t.size();
    std::vector<double> zr(m), zi(m), cr(m), ci(m);
    const double start = theta0 + static_cast<double>(begin) * step;
    for (std::size_t n = 0; n < m; ++n) {
        const Complex z = y[n] * std::polar(1.0, start * t[n]);
        zr[n] = z.real();
        zi[n] = z.imag();
        cr[n] = std::cos(step * t[n]);
        ci[n] = std::sin(step * t[n]);
    }
    const double inv = 1.0 / static_cast<double>(m);
    double* pr = zr.data();
    double* pi = zi.data();
    const double* qr = cr.data();
    const double* qi = ci.data();
    for (std::ptrdiff_t k = begin; k < end; ++k) {
        double sr = 0.0, si = 0.0;
#pragma omp simd reduction(+ : sr, si)
        for (std::size_t n = 0; n < m; ++n) {
            sr += pr[n];
            si += pi[n];
            const double nr = pr[n] * qr[n] - pi[n] * qi[n];
            pi[n] = pr[n] * qi[n] + pi[n] * qr[n];
            pr[n] = nr;
        }
        out[static_cast<std::size_t>(k)] = Complex(sr * inv, si * inv);
    }
}

template <bool kParallel>
void conjugate_1q_impl(Eigen::MatrixXcd& rho, int qubit, const Mat2& u) {
    const std::ptrdiff_t dim = rho.rows();
    const std::ptrdiff_t mask = std::ptrdiff_t{1} << qubit;
    const Mat2 ud = u.adjoint();
    // Left multiply: column by column.
#pragma omp parallel for schedule(static) if (kParallel)
    for (std::ptrdiff_t j = 0; j < dim; ++j) {
        for (std::ptrdiff_t i = 0; i < dim; ++i) {
            if (i & mask) continue;
            const Complex a = rho(i, j);
            const Complex b = rho(i | mask, j);
            rho(i, j) = u(0, 0) * a + u(0, 1) * b;
            rho(i | mask, j) = u(1, 0) * a + u(1, 1) * b;
        }
    }
    // Right multiply by U^dagger: pairs of columns.
#pragma omp parallel for schedule(static) if (kParallel)
    for (std::ptrdiff_t j = 0; j < dim; ++j) {
        if (j & mask) continue;
        for (std::ptrdiff_t i = 0; i < dim; ++i) {
            const Complex a = rho(i, j);
            const Complex b = rho(i, j | mask);
            rho(i, j) = a * ud(0, 0) + b * ud(1, 0);
            rho(i, j | mask) = a * ud(0, 1) + b * ud(1, 1);
        }
    }
}

template <bool kParallel>
void conjugate_2q_impl(Eigen::MatrixXcd& rho, int q0, int q1, const Mat4& u) {
    const std::ptrdiff_t dim = rho.rows();
    const std::ptrdiff_t m0 = std::ptrdiff_t{1} << q0;
    const std::ptrdiff_t m1 = std::ptrdiff_t{1} << q1;
    const Mat4 ud = u.adjoint();
#pragma omp parallel for schedule(static) if (kParallel)
    for (std::ptrdiff_t j = 0; j < dim; ++j) {
        for (std::ptrdiff_t i = 0; i < dim; ++i) {
            if ((i & m0) || (i & m1)) continue;
            const std::ptrdiff_t idx[4] = {i, i | m0, i | m1, i | m0 | m1};
            Complex v[4];
            for (int a = 0; a < 4; ++a) v[a] = rho(idx[a], j);
            for (int a = 0; a < 4; ++a) {
                rho(idx[a], j) = u(a, 0) * v[0] + u(a, 1) * v[1] + u(a, 2) * v[2] + u(a, 3) * v[3];
            }
        }
    }
#pragma omp parallel for schedule(static) if (kParallel)
    for (std::ptrdiff_t j = 0; j < dim; ++j) {
        if ((j & m0) || (j & m1)) continue;
        const std::ptrdiff_t idx[4] = {j, j | m0, j | m1, j | m0 | m1};
        for (std::ptrdiff_t i = 0; i < dim; ++i) {
            Complex v[4];
            for (int a = 0; a < 4; ++a) v[a] = rho(i, idx[a]);
            for (int b = 0; b < 4; ++b) {
                rho(i, idx[b]) = v[0] * ud(0, b) + v[1] * ud(1, b) + v[2] * ud(2, b) + v[3] * ud(3, b);
            }
        }
    }
}

}  // namespace

double draw_shot_mean(double mean, long long shots, Engine& engine) {
    const double p_plus = std::clamp(0.5 * (1.0 + mean), 0.0, 1.0);
    std::binomial_distribution<long long> dist(shots, p_plus);
    const long long plus = dist(engine);
    return static_cast<double>(2 * plus - shots) / static_cast<double>(shots);
}

Complex fourier_mean(std::span<const double> t, std::span<const Complex> y, double theta) {
    Complex acc = 0.0;
    for (std::size_t n = 0; n < t.size(); ++n) acc += y[n] * std::polar(1.0, theta * t[n]);
    return acc / static_cast<double>(t.size());
}

namespace serial {

void fourier_mean_grid(std::span<const double> t, std::span<const Complex> y, double theta0, double step,
                       std::span<Complex> out) {
    for (std::size_t k = 0; k < out.size(); ++k) {
        out[k] = fourier_mean(t, y, theta0 + static_cast<double>(k) * step);
    }
}

void shot_average(std::span<const Complex> means, long long shots, Seed seed, std::span<Complex> out) {
    for (std::size_t n = 0; n < means.size(); ++n) shot_average_one(means, shots, seed, out, n);
}

void conjugate_1q(Eigen::MatrixXcd& rho, int qubit, const Mat2& u) { conjugate_1q_impl<false>(rho, qubit, u); }

void conjugate_2q(Eigen::MatrixXcd& rho, int q0, int q1, const Mat4& u) {
    conjugate_2q_impl<false>(rho, q0, q1, u);
}

}  // namespace serial

namespace omp {

void fourier_mean_grid(std::span<const double> t, std::span<const Complex> y, double theta0, double step,
                       std::span<Complex> out) {
    const auto total = static_cast<std::ptrdiff_t>(out.size());
    const std::ptrdiff_t blocks = (total + kGridBlock - 1) / kGridBlock;
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t b = 0; b < blocks; ++b) {
        fourier_block(t, y, theta0, step, out, b * kGridBlock, std::min(total, (b + 1) * kGridBlock));
    }
}

void shot_average(std::span<const Complex> means, long long shots, Seed seed, std::span<Complex> out) {
    const auto total = static_cast<std::ptrdiff_t>(means.size());
#pragma omp parallel for schedule(dynamic, kRowBlock)
    for (std::ptrdiff_t n = 0; n < total; ++n) shot_average_one(means, shots, seed, out, static_cast<std::size_t>(n));
}

void conjugate_1q(Eigen::MatrixXcd& rho, int qubit, const Mat2& u) { conjugate_1q_impl<true>(rho, qubit, u); }

void conjugate_2q(Eigen::MatrixXcd& rho, int q0, int q1, const Mat4& u) {
    conjugate_2q_impl<true>(rho, q0, q1, u);
}

}  // namespace omp
}  // namespace kernels
}  // namespace rqcels
