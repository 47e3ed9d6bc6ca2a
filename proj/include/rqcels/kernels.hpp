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

// Data-parallel inner loops. Every kernel has a straightforward serial
// reference in `kernels::serial` and an OpenMP version in `kernels::omp`.
// The OpenMP versions partition work into fixed-size blocks, so their output
// does not depend on the thread count.

#ifndef RQCELS_KERNELS_HPP
#define RQCELS_KERNELS_HPP

#include <Eigen/Dense>
#include <complex>
#include <cstddef>
#include <span>

#include "rqcels/rng.hpp"

namespace rqcels {

using Complex = std::complex<double>;

enum class Exec { serial, parallel };

/// Number of OpenMP threads the parallel kernels will use.
int kernel_threads();
void set_kernel_threads(int threads);

namespace kernels {

using Mat2 = Eigen::Matrix2cd;
using Mat4 = Eigen::Matrix4cd;

/// Average of `shots` +/-1 draws with P(+1) = (1 + mean) / 2; `mean` must
/// already be clamped to [-1, 1].
double draw_shot_mean(double mean, long long shots, Engine& engine);

/// (1/N) sum_n y_n exp(i theta t_n).
Complex fourier_mean(std::span<const double> t, std::span<const Complex> y, double theta);

namespace serial {

/// out[k] = fourier_mean(t, y, theta0 + k * step), evaluated directly.
void fourier_mean_grid(std::span<const double> t, std::span<const Complex> y, double theta0, double step,
                       std::span<Complex> out);

/// out[n] = shot average of means[n]; stream (seed, real|imag, n).
void shot_average(std::span<const Complex> means, long long shots, Seed seed, std::span<Complex> out);

/// rho <- U rho U^dagger on one qubit (bit `qubit` of the basis index).
void conjugate_1q(Eigen::MatrixXcd& rho, int qubit, const Mat2& u);

/// rho <- U rho U^dagger; U's local index is bit(q0) + 2 bit(q1).
void conjugate_2q(Eigen::MatrixXcd& rho, int q0, int q1, const Mat4& u);

}  // namespace serial

namespace omp {

/// Same contract as serial::fourier_mean_grid, using a blocked phasor
/// recurrence (one complex multiply per term instead of a sincos).
void fourier_mean_grid(std::span<const double> t, std::span<const Complex> y, double theta0, double step,
                       std::span<Complex> out);

void shot_average(std::span<const Complex> means, long long shots, Seed seed, std::span<Complex> out);

void conjugate_1q(Eigen::MatrixXcd& rho, int qubit, const Mat2& u);

void conjugate_2q(Eigen::MatrixXcd& rho, int q0, int q1, const Mat4& u);

}  // namespace omp

inline void fourier_mean_grid(Exec exec, std::span<const double> t, std::span<const Complex> y, double theta0,
                              double step, std::span<Complex> out) {
    if (exec == Exec::serial) {
        serial::fourier_mean_grid(t, y, theta0, step, out);
    } else {
        omp::fourier_mean_grid(t, y, theta0, step, out);
    }
}

inline void shot_average(Exec exec, std::span<const Complex> means, long long shots, Seed seed,
                         std::span<Complex> out) {
    if (exec == Exec::serial) {
        serial::shot_average(means, shots, seed, out);
    } else {
        omp::shot_average(means, shots, seed, out);
    }
}

inline void conjugate_1q(Exec exec, Eigen::MatrixXcd& rho, int qubit, const Mat2& u) {
    if (exec == Exec::serial) {
        serial::conjugate_1q(rho, qubit, u);
    } else {
        omp::conjugate_1q(rho, qubit, u);
    }
}

inline void conjugate_2q(Exec exec, Eigen::MatrixXcd& rho, int q0, int q1, const Mat4& u) {
    if (exec == Exec::serial) {
        serial::conjugate_2q(rho, q0, q1, u);
    } else {
        omp::conjugate_2q(rho, q0, q1, u);
    }
}

}  // namespace kernels
}  // namespace rqcels

#endif  // RQCELS_KERNELS_HPP
