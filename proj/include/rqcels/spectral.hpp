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

#ifndef RQCELS_SPECTRAL_HPP
#define RQCELS_SPECTRAL_HPP

#include <Eigen/Dense>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "rqcels/rng.hpp"

namespace rqcels {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

inline constexpr int kMaxDenseQubits = 12;

/// Dense Hermitian operator on L qubits. Qubit i is bit i of the basis index.
class Hamiltonian {
   public:
    explicit Hamiltonian(CMatrix entries);

    std::size_t dim() const { return static_cast<std::size_t>(entries_.rows()); }
    int num_qubits() const { return num_qubits_; }
    const CMatrix& matrix() const { return entries_; }

   private:
    CMatrix entries_;
    int num_qubits_ = 0;
};

/// Unit-norm state vector.
class StateVector {
   public:
    explicit StateVector(CVector amplitudes);

    static StateVector plus_state(int num_qubits);
    static StateVector basis_state(std::size_t dim, std::size_t index);

    std::size_t dim() const { return static_cast<std::size_t>(amps_.size()); }
    const CVector& amplitudes() const { return amps_; }

   private:
    CVector amps_;
};

struct Eigensystem {
    Eigen::VectorXd values;  // ascending
    CMatrix vectors;         // column k pairs with values[k]
    int sweeps = 0;
};

/// -sum_i Z_i Z_{i+1} - g sum_i X_i with open boundaries.
Hamiltonian build_tfim(int num_qubits, double g);

/// Cyclic complex Jacobi. Stops when the off-diagonal Frobenius norm drops
/// below `tolerance * max(1, ||A||_F)`.
Eigensystem jacobi_eigensolver(const CMatrix& a, double tolerance = 1e-13, int max_sweeps = 100);

/// Validates Hermiticity then runs the Jacobi solver.
Eigensystem eigendecompose(const CMatrix& h);
Eigensystem eigendecompose(const Hamiltonian& h);

/// Eigenvalues of a normalized Hamiltonian together with the squared
/// overlaps of an initial state with each eigenvector.
class SpectralModel {
   public:
    /// Validates: ascending eigenvalues in [-1, 1], nonnegative overlaps summing
    /// to one, matching lengths, positive scale.
    SpectralModel(std::vector<double> eigenvalues, std::vector<double> overlaps, double scale = 1.0);

    std::span<const double> eigenvalues() const { return eigenvalues_; }
    std::span<const double> overlaps() const { return overlaps_; }
    std::size_t size() const { return eigenvalues_.size(); }
    double ground_energy() const { return eigenvalues_.front(); }
    double gap() const;
    /// Spectral norm that was divided out of the Hamiltonian.
    double scale() const { return scale_; }

   private:
    std::vector<double> eigenvalues_;
    std::vector<double> overlaps_;
    double scale_;
};

/// Spectrum of H / ||H||_2 with overlaps |<psi_m|psi>|^2. No additive shift.
SpectralModel make_model(const Hamiltonian& h, const StateVector& psi);

/// Permutes overlaps[3:] by `tail_permutation` (a permutation of 0..size-4);
/// the first three overlaps and all eigenvalues are kept.
SpectralModel permute_tail_overlaps(const SpectralModel& model,
                                    std::span<const std::size_t> tail_permutation);

/// Uniformly random tail permutation drawn from `seed`.
SpectralModel reshuffle_overlaps(const SpectralModel& model, Seed seed);

}  // namespace rqcels

#endif  // RQCELS_SPECTRAL_HPP
