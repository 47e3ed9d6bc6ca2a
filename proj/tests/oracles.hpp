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

// Independent reference computations shared by the tests. Nothing here calls
// into the library's own solvers.

#ifndef RQCELS_TESTS_ORACLES_HPP
#define RQCELS_TESTS_ORACLES_HPP

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <complex>
#include <string>
#include <vector>

namespace oracle {

using Complex = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

inline Mat pauli(char p) {
    Mat m(2, 2);
    switch (p) {
        case 'X': m << 0, 1, 1, 0; break;
        case 'Y': m << 0, Complex(0, -1), Complex(0, 1), 0; break;
        case 'Z': m << 1, 0, 0, -1; break;
        default: m = Mat::Identity(2, 2);
    }
    return m;
}

/// Operator acting as `ops[q]` on qubit q (qubit q is bit q of the index),
/// built by Kronecker products with the highest qubit leftmost.
inline Mat kron_string(const std::string& ops) {
    Mat out = Mat::Identity(1, 1);
    for (int q = static_cast<int>(ops.size()) - 1; q >= 0; --q) {
        Mat next = Eigen::kroneckerProduct(out, pauli(ops[static_cast<std::size_t>(q)])).eval();
        out = next;
    }
    return out;
}

inline std::string single(int n, int q, char p) {
    std::string s(static_cast<std::size_t>(n), 'I');
    s[static_cast<std::size_t>(q)] = p;
    return s;
}

inline Mat tfim(int n, double g) {
    const int dim = 1 << n;
    Mat h = Mat::Zero(dim, dim);
    for (int i = 0; i + 1 < n; ++i) {
        std::string s(static_cast<std::size_t>(n), 'I');
        s[static_cast<std::size_t>(i)] = 'Z';
        s[static_cast<std::size_t>(i + 1)] = 'Z';
        h -= kron_string(s);
    }
    for (int i = 0; i < n; ++i) h -= g * kron_string(single(n, i, 'X'));
    return h;
}

inline Vec plus_state(int n) {
    const int dim = 1 << n;
    return Vec::Constant(dim, Complex(1.0 / std::sqrt(static_cast<double>(dim)), 0.0));
}

/// exp(-i t H) by the Pade-based matrix function module.
inline Mat expm_i(const Mat& h, double t) { return (Complex(0.0, -t) * h).exp(); }

/// Smallest eigenpair by shifted inverse power iteration.
inline double inverse_power_ground(const Mat& h, int iterations = 200) {
    const double shift = -h.cwiseAbs().rowwise().sum().maxCoeff() - 0.1;
    const Mat a = h - shift * Mat::Identity(h.rows(), h.cols());
    Eigen::PartialPivLU<Mat> lu(a);
    Vec v = Vec::Ones(h.rows()) + Vec::LinSpaced(h.rows(), 0.0, 1.0);
    v.normalize();
    for (int k = 0; k < iterations; ++k) {
        v = lu.solve(v);
        v.normalize();
    }
    return (v.adjoint() * h * v)(0, 0).real();
}

/// Largest eigenvalue by power iteration on H + shift.
inline double power_top(const Mat& h, int iterations = 4000) {
    const double shift = h.cwiseAbs().rowwise().sum().maxCoeff() + 0.1;
    const Mat a = h + shift * Mat::Identity(h.rows(), h.cols());
    Vec v = Vec::Ones(h.rows()) + Vec::LinSpaced(h.rows(), 0.0, 1.0);
    v.normalize();
    for (int k = 0; k < iterations; ++k) {
        v = a * v;
        v.normalize();
    }
    return (v.adjoint() * h * v)(0, 0).real();
}

/// Standard normal CDF.
inline double phi(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

/// CDF of N(0, width^2) truncated to [-gamma width, gamma width].
inline double truncated_normal_cdf(double t, double width, double gamma) {
    const double lim = gamma * width;
    if (t <= -lim) return 0.0;
    if (t >= lim) return 1.0;
    return (phi(t / width) - phi(-gamma)) / (phi(gamma) - phi(-gamma));
}

/// Density of the same distribution.
inline double truncated_normal_pdf(double t, double width, double gamma) {
    if (std::abs(t) > gamma * width) return 0.0;
    const double z = (phi(gamma) - phi(-gamma)) * width * std::sqrt(2.0 * M_PI);
    return std::exp(-0.5 * t * t / (width * width)) / z;
}

/// Composite Gauss-Legendre on [a, b] with `panels` panels of 8 nodes.
template <class F>
auto gauss_legendre(F f, double a, double b, int panels) {
    static const double x[8] = {-0.9602898564975363, -0.7966664774136267, -0.5255324099163290, -0.1834346424956498,
                                0.1834346424956498,  0.5255324099163290,  0.7966664774136267,  0.9602898564975363};
    static const double w[8] = {0.1012285362903763, 0.2223810344533745, 0.3137066458778873, 0.3626837833783620,
                                0.3626837833783620, 0.3137066458778873, 0.2223810344533745, 0.1012285362903763};
    using R = decltype(f(a));
    R acc{};
    const double h = (b - a) / panels;
    for (int p = 0; p < panels; ++p) {
        const double lo = a + p * h;
        for (int k = 0; k < 8; ++k) acc += w[k] * 0.5 * h * f(lo + 0.5 * h * (x[k] + 1.0));
    }
    return acc;
}

}  // namespace oracle

#endif  // RQCELS_TESTS_ORACLES_HPP
