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

#include "rqcels/spectral.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <string>

#include "rqcels/errors.hpp"

namespace rqcels {

namespace {

double hermiticity_defect(const CMatrix& a) {
    return (a - a.adjoint()).cwiseAbs().maxCoeff();
}

double off_diagonal_norm(const CMatrix& a) {
    double s = 0.0;
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
        for (Eigen::Index i = 0; i < a.rows(); ++i) {
            if (i != j) s += std::norm(a(i, j));
        }
    }
    return std::sqrt(s);
}

}  // namespace

Hamiltonian::Hamiltonian(CMatrix entries) : entries_(std::move(entries)) {
    const auto n = static_cast<std::size_t>(entries_.rows());
    if (entries_.rows() != entries_.cols() || n == 0 || !std::has_single_bit(n)) {
        throw ValidationError("Hamiltonian must be square with power-of-two dimension, got " +
                              std::to_string(entries_.rows()) + "x" + std::to_string(entries_.cols()));
    }
    const double scale = std::max(1.0, entries_.cwiseAbs().maxCoeff());
    if (hermiticity_defect(entries_) > 1e-12 * scale) {
        throw ValidationError("Hamiltonian is not Hermitian");
    }
    num_qubits_ = std::countr_zero(n);
}

StateVector::StateVector(CVector amplitudes) : amps_(std::move(amplitudes)) {
    if (amps_.size() == 0 || std::abs(amps_.norm() - 1.0) > 1e-12) {
        throw ValidationError("state vector must have unit norm");
    }
}

StateVector StateVector::plus_state(int num_qubits) {
    const auto dim = std::size_t{1} << num_qubits;
    return StateVector(CVector::Constant(static_cast<Eigen::Index>(dim), 1.0 / std::sqrt(double(dim))));
}

StateVector StateVector::basis_state(std::size_t dim, std::size_t index) {
    if (index >= dim) throw ValidationError("basis index out of range");
    CVector v = CVector::Zero(static_cast<Eigen::Index>(dim));
    v(static_cast<Eigen::Index>(index)) = 1.0;
    return StateVector(std::move(v));
}

Hamiltonian build_tfim(int num_qubits, double g) {
    if (num_qubits < 1 || num_qubits > kMaxDenseQubits) {
        throw CapacityError("TFIM qubit count must be in [1, " + std::to_string(kMaxDenseQubits) +
                            "], got " + std::to_string(num_qubits));
    }
    const auto dim = Eigen::Index{1} << num_qubits;
    CMatrix h = CMatrix::Zero(dim, dim);
    for (Eigen::Index b = 0; b < dim; ++b) {
        double diag = 0.0;
        for (int i = 0; i + 1 < num_qubits; ++i) {
            const bool zi = (b >> i) & 1;
            const bool zj = (b >> (i + 1)) & 1;
            diag -= (zi == zj) ? 1.0 : -1.0;
        }
        h(b, b) = diag;
        for (int i = 0; i < num_qubits; ++i) {
            h(b ^ (Eigen::Index{1} << i), b) -= g;
        }
    }
    return Hamiltonian(std::move(h));
}

Eigensystem jacobi_eigensolver(const CMatrix& input, double tolerance, int max_sweeps) {
    const Eigen::Index n = input.rows();
    CMatrix a = input;
    CMatrix v = CMatrix::Identity(n, n);
    const double threshold = tolerance * std::max(1.0, input.norm());

    int sweep = 0;
    for (; sweep < max_sweeps; ++sweep) {
        if (off_diagonal_norm(a) <= threshold) break;
        for (Eigen::Index p = 0; p < n - 1; ++p) {
            for (Eigen::Index q = p + 1; q < n; ++q) {
                const Complex apq = a(p, q);
                const double mag = std::abs(apq);
                if (mag == 0.0) continue;
                // Phase e^{-i phi} on column q makes a(p, q) real, then a real
                // rotation annihilates it. U = [[c, s], [-s e^{-i phi}, c e^{-i phi}]].
                const Complex phase = std::conj(apq) / mag;
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const double tau = (aqq - app) / (2.0 * mag);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                const Complex u_qp = -s * phase;
                const Complex u_qq = c * phase;

                for (Eigen::Index k = 0; k < n; ++k) {
                    const Complex akp = a(k, p);
                    const Complex akq = a(k, q);
                    a(k, p) = akp * c + akq * u_qp;
                    a(k, q) = akp * s + akq * u_qq;
                }
                for (Eigen::Index k = 0; k < n; ++k) {
                    const Complex apk = a(p, k);
                    const Complex aqk = a(q, k);
                    a(p, k) = c * apk + std::conj(u_qp) * aqk;
                    a(q, k) = s * apk + std::conj(u_qq) * aqk;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                a(p, p) = a(p, p).real();
                a(q, q) = a(q, q).real();
                for (Eigen::Index k = 0; k < n; ++k) {
                    const Complex vkp = v(k, p);
                    const Complex vkq = v(k, q);
                    v(k, p) = vkp * c + vkq * u_qp;
                    v(k, q) = vkp * s + vkq * u_qq;
                }
            }
        }
    }
    if (off_diagonal_norm(a) > threshold) {
        throw AccuracyError("Jacobi eigensolver did not converge in " + std::to_string(max_sweeps) + " sweeps");
    }

    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](Eigen::Index i, Eigen::Index j) { return a(i, i).real() < a(j, j).real(); });
    Eigensystem out;
    out.values.resize(n);
    out.vectors.resize(n, n);
    for (Eigen::Index k = 0; k < n; ++k) {
        out.values(k) = a(order[k], order[k]).real();
        out.vectors.col(k) = v.col(order[k]);
    }
    out.sweeps = sweep;
    return out;
}

Eigensystem eigendecompose(const CMatrix& h) {
    if (h.rows() != h.cols() || h.rows() == 0) throw ValidationError("eigendecompose needs a square matrix");
    const double scale = std::max(1.0, h.cwiseAbs().maxCoeff());
    if (hermiticity_defect(h) > 1e-12 * scale) throw ValidationError("eigendecompose needs a Hermitian matrix");
    return jacobi_eigensolver(h);
}

Eigensystem eigendecompose(const Hamiltonian& h) { return jacobi_eigensolver(h.matrix()); }

SpectralModel::SpectralModel(std::vector<double> eigenvalues, std::vector<double> overlaps, double scale)
    : eigenvalues_(std::move(eigenvalues)), overlaps_(std::move(overlaps)), scale_(scale) {
    if (eigenvalues_.empty() || eigenvalues_.size() != overlaps_.size()) {
        throw ValidationError("spectral model needs equal, nonzero numbers of eigenvalues and overlaps");
    }
    if (!(scale_ > 0.0) || !std::isfinite(scale_)) throw ValidationError("spectral model scale must be positive");
    if (!std::is_sorted(eigenvalues_.begin(), eigenvalues_.end())) {
        throw ValidationError("eigenvalues must be ascending");
    }
    for (double l : eigenvalues_) {
        if (!(std::abs(l) <= 1.0 + 1e-12)) throw ValidationError("eigenvalues must lie in [-1, 1]");
    }
    double total = 0.0;
    for (double p : overlaps_) {
        if (!(p >= 0.0)) throw ValidationError("overlaps must be nonnegative");
        total += p;
    }
    if (std::abs(total - 1.0) > 1e-12) throw ValidationError("overlaps must sum to one");
}

double SpectralModel::gap() const {
    return eigenvalues_.size() < 2 ? 0.0 : eigenvalues_[1] - eigenvalues_[0];
}

SpectralModel make_model(const Hamiltonian& h, const StateVector& psi) {
    if (psi.dim() != h.dim()) throw ValidationError("state and Hamiltonian dimensions differ");
    const Eigensystem es = eigendecompose(h);
    const double scale = std::max(std::abs(es.values(0)), std::abs(es.values(es.values.size() - 1)));
    if (scale == 0.0) throw DegenerateScaleError("cannot normalize the zero Hamiltonian");

    const auto n = static_cast<std::size_t>(es.values.size());
    std::vector<double> lambdas(n), overlaps(n);
    const CVector proj = es.vectors.adjoint() * psi.amplitudes();
    double total = 0.0;
    for (std::size_t m = 0; m < n; ++m) {
        lambdas[m] = std::clamp(es.values(static_cast<Eigen::Index>(m)) / scale, -1.0, 1.0);
        overlaps[m] = std::norm(proj(static_cast<Eigen::Index>(m)));
        total += overlaps[m];
    }
    for (double& p : overlaps) p /= total;
    return SpectralModel(std::move(lambdas), std::move(overlaps), scale);
}

SpectralModel permute_tail_overlaps(const SpectralModel& model, std::span<const std::size_t> tail_permutation) {
    const std::size_t n = model.size();
    if (n < 4) throw ValidationError("reshuffling needs at least four levels");
    if (tail_permutation.size() != n - 3) throw ValidationError("tail permutation has the wrong length");
    std::vector<bool> seen(n - 3, false);
    for (std::size_t k : tail_permutation) {
        if (k >= n - 3 || seen[k]) throw ValidationError("tail permutation is not a permutation");
        seen[k] = true;
    }
    const auto old = model.overlaps();
    std::vector<double> overlaps(old.begin(), old.end());
    for (std::size_t j = 0; j < n - 3; ++j) overlaps[3 + j] = old[3 + tail_permutation[j]];
    const auto eig = model.eigenvalues();
    return SpectralModel(std::vector<double>(eig.begin(), eig.end()), std::move(overlaps), model.scale());
}

SpectralModel reshuffle_overlaps(const SpectralModel& model, Seed seed) {
    if (model.size() < 4) throw ValidationError("reshuffling needs at least four levels");
    std::vector<std::size_t> perm(model.size() - 3);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    Engine engine = make_engine(derive_seed(seed, {stream::kReshuffle}));
    std::shuffle(perm.begin(), perm.end(), engine);
    return permute_tail_overlaps(model, perm);
}

}  // namespace rqcels
