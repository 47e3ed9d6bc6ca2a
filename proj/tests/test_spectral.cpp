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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "oracles.hpp"
#include "rqcels/errors.hpp"
#include "rqcels/spectral.hpp"

using namespace rqcels;

namespace {

double max_abs(const CMatrix& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST(BuildTfim, SingleQubitIsMinusX) {
    const auto h = build_tfim(1, 1.0);
    CMatrix expect(2, 2);
    expect << 0, -1, -1, 0;
    EXPECT_LT(max_abs(h.matrix() - expect), 1e-15);
    const auto e = eigendecompose(h);
    EXPECT_NEAR(e.values[0], -1.0, 1e-12);
    EXPECT_NEAR(e.values[1], 1.0, 1e-12);
}

TEST(BuildTfim, ClassicalIsingDiagonal) {
    const auto h = build_tfim(2, 0.0);
    const Eigen::VectorXcd d = h.matrix().diagonal();
    EXPECT_NEAR(d[0].real(), -1.0, 1e-15);
    EXPECT_NEAR(d[1].real(), 1.0, 1e-15);
    EXPECT_NEAR(d[2].real(), 1.0, 1e-15);
    EXPECT_NEAR(d[3].real(), -1.0, 1e-15);
    EXPECT_LT(max_abs(h.matrix() - CMatrix(d.asDiagonal())), 1e-15);
}

TEST(BuildTfim, MatchesKroneckerConstruction) {
    for (int n = 1; n <= 6; ++n) {
        for (double g : {0.0, 0.5, 1.0, 1.7}) {
            const auto h = build_tfim(n, g);
            EXPECT_LT(max_abs(h.matrix() - oracle::tfim(n, g)), 1e-14) << n << " " << g;
            EXPECT_LE(max_abs(h.matrix() - h.matrix().adjoint()), 1e-12);
        }
    }
}

TEST(BuildTfim, RejectsOutOfRange) {
    EXPECT_THROW(build_tfim(0, 1.0), CapacityError);
    EXPECT_THROW(build_tfim(13, 1.0), CapacityError);
}

TEST(Eigendecompose, Diagonal) {
    CMatrix a = CMatrix::Zero(3, 3);
    a(0, 0) = 3;
    a(1, 1) = 1;
    a(2, 2) = 2;
    const auto e = eigendecompose(a);
    EXPECT_NEAR(e.values[0], 1.0, 1e-14);
    EXPECT_NEAR(e.values[1], 2.0, 1e-14);
    EXPECT_NEAR(e.values[2], 3.0, 1e-14);
}

TEST(Eigendecompose, MinusXVectorsArePlusMinus) {
    CMatrix a(2, 2);
    a << 0, -1, -1, 0;
    const auto e = eigendecompose(a);
    const double s = 1.0 / std::sqrt(2.0);
    EXPECT_NEAR(std::abs(e.vectors(0, 0) * s + e.vectors(1, 0) * s), 1.0, 1e-12);
    EXPECT_NEAR(std::abs(e.vectors(0, 1) * s - e.vectors(1, 1) * s), 1.0, 1e-12);
}

TEST(Eigendecompose, RejectsNonHermitian) {
    CMatrix a(2, 2);
    a << 0, 1, 0, 0;
    EXPECT_THROW(eigendecompose(a), ValidationError);
}

TEST(Eigendecompose, TfimGroundMatchesInversePowerIteration) {
    const auto h = build_tfim(4, 1.0);
    const auto e = eigendecompose(h);
    EXPECT_NEAR(e.values[0], oracle::inverse_power_ground(oracle::tfim(4, 1.0)), 1e-9);
    EXPECT_NEAR(e.values[15], oracle::power_top(oracle::tfim(4, 1.0)), 1e-9);
}

TEST(Eigendecompose, CharacteristicPolynomialSmallMatrices) {
    // 2x2 Hermitian: roots of x^2 - tr x + det.
    std::mt19937_64 rng(5);
    std::normal_distribution<double> n;
    for (int trial = 0; trial < 50; ++trial) {
        CMatrix a(2, 2);
        const double a00 = n(rng), a11 = n(rng);
        const Complex off(n(rng), n(rng));
        a << a00, off, std::conj(off), a11;
        const double tr = a00 + a11, det = a00 * a11 - std::norm(off);
        const double disc = std::sqrt(tr * tr - 4 * det);
        const auto e = eigendecompose(a);
        EXPECT_NEAR(e.values[0], 0.5 * (tr - disc), 1e-9);
        EXPECT_NEAR(e.values[1], 0.5 * (tr + disc), 1e-9);
    }
    // 3x3 real symmetric: trigonometric cubic roots.
    for (int trial = 0; trial < 50; ++trial) {
        Eigen::Matrix3d s;
        for (int i = 0; i < 3; ++i)
            for (int j = i; j < 3; ++j) s(i, j) = s(j, i) = n(rng);
        const double q = s.trace() / 3.0;
        const Eigen::Matrix3d b0 = s - q * Eigen::Matrix3d::Identity();
        const double p = std::sqrt((b0 * b0).trace() / 6.0);
        const Eigen::Matrix3d b = b0 / p;
        const double r = std::clamp(b.determinant() / 2.0, -1.0, 1.0);
        const double phi = std::acos(r) / 3.0;
        std::vector<double> roots{q + 2 * p * std::cos(phi), q + 2 * p * std::cos(phi + 2 * M_PI / 3),
                                  q + 2 * p * std::cos(phi + 4 * M_PI / 3)};
        std::sort(roots.begin(), roots.end());
        const auto e = eigendecompose(CMatrix(s.cast<Complex>()));
        for (int k = 0; k < 3; ++k) EXPECT_NEAR(e.values[k], roots[static_cast<std::size_t>(k)], 1e-9);
    }
}

TEST(Eigendecompose, OrthonormalAndReconstructs) {
    std::mt19937_64 rng(9);
    std::normal_distribution<double> n;
    for (int dim : {4, 16, 33}) {
        CMatrix a(dim, dim);
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j) a(i, j) = Complex(n(rng), n(rng));
        a = (a + a.adjoint()).eval();
        const auto e = eigendecompose(a);
        for (int k = 1; k < dim; ++k) EXPECT_LE(e.values[k - 1], e.values[k]);
        const CMatrix id = e.vectors.adjoint() * e.vectors;
        EXPECT_LT(max_abs(id - CMatrix::Identity(dim, dim)), 1e-10);
        const CMatrix rec = e.vectors * e.values.cast<Complex>().asDiagonal() * e.vectors.adjoint();
        EXPECT_LT(max_abs(rec - a), 1e-9);
        const Eigen::SelfAdjointEigenSolver<CMatrix> ref(a);
        EXPECT_LT((ref.eigenvalues() - e.values).cwiseAbs().maxCoeff(), 1e-9);
    }
}

TEST(MakeModel, MinusXWithPlus) {
    CMatrix a(2, 2);
    a << 0, -1, -1, 0;
    const auto m = make_model(Hamiltonian(a), StateVector::plus_state(1));
    EXPECT_NEAR(m.eigenvalues()[0], -1.0, 1e-12);
    EXPECT_NEAR(m.eigenvalues()[1], 1.0, 1e-12);
    EXPECT_NEAR(m.overlaps()[0], 1.0, 1e-12);
    EXPECT_NEAR(m.overlaps()[1], 0.0, 1e-12);
    EXPECT_NEAR(m.scale(), 1.0, 1e-12);
}

TEST(MakeModel, TfimPlusStateOverlap) {
    const auto m = make_model(build_tfim(4, 1.0), StateVector::plus_state(4));
    EXPECT_NEAR(m.overlaps()[0], 0.8134, 5e-4);
}

TEST(MakeModel, TfimAgainstDenseOracle) {
    const auto h = oracle::tfim(4, 1.0);
    const Eigen::SelfAdjointEigenSolver<CMatrix> ref(h);
    const double norm = ref.eigenvalues().cwiseAbs().maxCoeff();
    const auto m = make_model(build_tfim(4, 1.0), StateVector::plus_state(4));
    EXPECT_NEAR(m.scale(), norm, 1e-10);
    const oracle::Vec psi = oracle::plus_state(4);
    const double p0 = std::norm(ref.eigenvectors().col(0).dot(psi));
    EXPECT_NEAR(m.overlaps()[0], p0, 1e-10);
    EXPECT_NEAR(m.ground_energy(), ref.eigenvalues()[0] / norm, 1e-12);
    EXPECT_NEAR(m.gap(), (ref.eigenvalues()[1] - ref.eigenvalues()[0]) / norm, 1e-10);
}

TEST(MakeModel, EigenvectorInputGivesUnitOverlap) {
    const auto h = build_tfim(3, 0.7);
    const auto e = eigendecompose(h);
    for (int k : {0, 3, 7}) {
        const auto m = make_model(h, StateVector(e.vectors.col(k)));
        for (std::size_t j = 0; j < m.size(); ++j) {
            EXPECT_NEAR(m.overlaps()[j], j == static_cast<std::size_t>(k) ? 1.0 : 0.0, 1e-10);
        }
    }
}

TEST(MakeModel, InvariantsHoldOverCouplings) {
    for (int n = 2; n <= 6; ++n) {
        for (double g : {0.3, 1.0, 2.5}) {
            const auto m = make_model(build_tfim(n, g), StateVector::plus_state(n));
            const double sum = std::accumulate(m.overlaps().begin(), m.overlaps().end(), 0.0);
            EXPECT_NEAR(sum, 1.0, 1e-12);
            for (double l : m.eigenvalues()) EXPECT_LE(std::abs(l), 1.0 + 1e-12);
            EXPECT_GE(m.gap(), 0.0);
        }
    }
}

TEST(MakeModel, ZeroHamiltonianRejected) {
    EXPECT_THROW(make_model(Hamiltonian(CMatrix::Zero(4, 4)), StateVector::plus_state(2)), DegenerateScaleError);
}

TEST(Reshuffle, IdentityPermutationKeepsModel) {
    const auto m = make_model(build_tfim(4, 1.0), StateVector::plus_state(4));
    std::vector<std::size_t> perm(m.size() - 3);
    std::iota(perm.begin(), perm.end(), 0);
    const auto r = permute_tail_overlaps(m, perm);
    for (std::size_t j = 0; j < m.size(); ++j) EXPECT_EQ(r.overlaps()[j], m.overlaps()[j]);
}

TEST(Reshuffle, HeadFixedTailPermuted) {
    const SpectralModel m({-1.0, -0.5, 0.0, 0.5, 1.0}, {0.5, 0.2, 0.1, 0.15, 0.05});
    for (Seed s = 0; s < 20; ++s) {
        const auto r = reshuffle_overlaps(m, s);
        EXPECT_EQ(r.overlaps()[0], 0.5);
        EXPECT_EQ(r.overlaps()[1], 0.2);
        EXPECT_EQ(r.overlaps()[2], 0.1);
        std::vector<double> a(r.overlaps().begin() + 3, r.overlaps().end());
        std::sort(a.begin(), a.end());
        EXPECT_EQ(a, (std::vector<double>{0.05, 0.15}));
        for (std::size_t j = 0; j < 5; ++j) EXPECT_EQ(r.eigenvalues()[j], m.eigenvalues()[j]);
    }
}

TEST(Reshuffle, TooFewLevelsRejected) {
    const SpectralModel m({-1.0, 0.0, 1.0}, {0.5, 0.25, 0.25});
    EXPECT_THROW(reshuffle_overlaps(m, 1), ValidationError);
}

TEST(Reshuffle, TailSlotsConvergeToTailMean) {
    const auto m = make_model(build_tfim(4, 1.0), StateVector::plus_state(4));
    const std::size_t tail = m.size() - 3;
    std::vector<double> tail_values(m.overlaps().begin() + 3, m.overlaps().end());
    const double mean = std::accumulate(tail_values.begin(), tail_values.end(), 0.0) / static_cast<double>(tail);
    double var = 0.0;
    for (double v : tail_values) var += (v - mean) * (v - mean);
    var /= static_cast<double>(tail);
    const int draws = 100000;
    std::vector<double> acc(tail, 0.0);
    for (int k = 0; k < draws; ++k) {
        const auto r = reshuffle_overlaps(m, static_cast<Seed>(k) + 1000);
        for (std::size_t j = 0; j < tail; ++j) acc[j] += r.overlaps()[3 + j];
        const double sum = std::accumulate(r.overlaps().begin(), r.overlaps().end(), 0.0);
        ASSERT_NEAR(sum, 1.0, 1e-12);
    }
    const double sigma = std::sqrt(var / draws);
    for (std::size_t j = 0; j < tail; ++j) EXPECT_NEAR(acc[j] / draws, mean, 3.0 * sigma + 1e-15) << j;
}
