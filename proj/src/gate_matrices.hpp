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

#ifndef RQCELS_SRC_GATE_MATRICES_HPP
#define RQCELS_SRC_GATE_MATRICES_HPP

#include <vector>

#include "rqcels/circuit.hpp"

namespace rqcels::detail {

using kernels::Mat2;
using kernels::Mat4;

/// 0 = I, 1 = X, 2 = Y, 3 = Z.
Mat2 pauli_matrix(int index);
int pauli_index(char p);

/// Two-qubit product P_a (x) P_b in the (q0, q1) basis order used by
/// kernels::conjugate_2q, where q0 is the low bit.
Mat4 pauli_pair(int a, int b);

Mat2 rx_matrix(double angle);
Mat4 rzz_matrix(double angle);
Mat4 controlled_pauli_matrix(char pauli, int control = 0);
Mat2 hadamard_matrix();
Mat2 phase_matrix(double angle);

struct StepAngles {
    double x_half;
    double x_full;
    double zz;
};

/// Rotation angles of one symmetric step of size `step`.
StepAngles step_angles(const TrotterSpec& spec, double step);

std::vector<GateOp> x_layer(int num_sites, double angle);
std::vector<GateOp> zz_layer(int num_sites, double angle);
/// Controlled-K gates triggered by ancilla (qubit num_sites) value `control`.
std::vector<GateOp> controlled_k_layer(int num_sites, int control = 0);

/// Starting register state of a Hadamard test (ancilla |0>).
DensityMatrix initial_density(const InitialState& init);

}  // namespace rqcels::detail

#endif  // RQCELS_SRC_GATE_MATRICES_HPP
