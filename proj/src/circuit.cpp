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

#include <algorithm>
#include <cmath>

#include "gate_matrices.hpp"
#include "rqcels/circuit.hpp"
#include "rqcels/errors.hpp"

namespace rqcels {

namespace detail {

Mat2 pauli_matrix(int index) {
    const Complex i(0.0, 1.0);
    Mat2 m;
    switch (index) {
        case 0:
            m << 1, 0, 0, 1;
            break;
        case 1:
            m << 0, 1, 1, 0;
            break;
        case 2:
            m << 0, -i, i, 0;
            break;
        case 3:
            m << 1, 0, 0, -1;
            break;
        default:
            throw ValidationError("Pauli index must lie in 0..3");
    }
    return m;
}

int pauli_index(char p) {
    switch (p) {
        case 'I':
            return 0;
        case 'X':
            return 1;
        case 'Y':
            return 2;
        case 'Z':
            return 3;
        default:
            throw ValidationError(std::string("unknown Pauli '") + p + "'");
    }
}

Mat4 pauli_pair(int a, int b) {
    const Mat2 pa = pauli_matrix(a);
    const Mat2 pb = pauli_matrix(b);
    Mat4 m;
    for (int r0 = 0; r0 < 2; ++r0)
        for (int r1 = 0; r1 < 2; ++r1)
            for (int c0 = 0; c0 < 2; ++c0)
                for (int c1 = 0; c1 < 2; ++c1) m(r0 + 2 * r1, c0 + 2 * c1) = pa(r0, c0) * pb(r1, c1);
    return m;
}

Mat2 rx_matrix(double angle) {
    const Complex c = std::cos(angle);
    const Complex s(0.0, -std::sin(angle));
    Mat2 m;
    m << c, s, s, c;
    return m;
}

Mat4 rzz_matrix(double angle) {
    Mat4 m = Mat4::Zero();
    for (int k = 0; k < 4; ++k) {
        const double parity = ((k & 1) == ((k >> 1) & 1)) ? 1.0 : -1.0;
        m(k, k) = std::polar(1.0, -angle * parity);
    }
    return m;
}

Mat4 controlled_pauli_matrix(char pauli, int control) {
    if (control != 0 && control != 1) throw ValidationError("control value must be 0 or 1");
    const Mat2 p = pauli_matrix(pauli_index(pauli));
    Mat4 m = Mat4::Zero();
    // Control is the low bit; the other control value is the identity.
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) m(2 * r + control, 2 * c + control) = p(r, c);
    m(1 - control, 1 - control) = 1.0;
    m(3 - control, 3 - control) = 1.0;
    return m;
}

Mat2 hadamard_matrix() {
    Mat2 m;
    const double s = 1.0 / std::sqrt(2.0);
    m << s, s, s, -s;
    return m;
}

Mat2 phase_matrix(double angle) {
    Mat2 m;
    m << 1, 0, 0, std::polar(1.0, angle);
    return m;
}

std::vector<GateOp> x_layer(int num_sites, double angle) {
    std::vector<GateOp> out;
    for (int j = 0; j < num_sites; ++j) {
        GateOp g;
        g.kind = GateKind::rx;
        g.q0 = j;
        g.angle = angle;
        out.push_back(g);
    }
    return out;
}

std::vector<GateOp> zz_layer(int num_sites, double angle) {
    std::vector<GateOp> out;
    for (int j = 0; j + 1 < num_sites; ++j) {
        GateOp g;
        g.kind = GateKind::rzz;
        g.q0 = j;
        g.q1 = j + 1;
        g.angle = angle;
        out.push_back(g);
    }
    return out;
}

std::vector<GateOp> controlled_k_layer(int num_sites, int control) {
    const std::string k = k_string(num_sites);
    std::vector<GateOp> out;
    for (int j = 0; j < num_sites; ++j) {
        GateOp g;
        g.kind = GateKind::cpauli;
        g.q0 = num_sites;
        g.q1 = j;
        g.pauli = k[static_cast<std::size_t>(j)];
        g.control = control;
        out.push_back(g);
    }
    return out;
}

StepAngles step_angles(const TrotterSpec& spec, double step) {
    return {-spec.g * step / (2.0 * spec.scale), -spec.g * step / spec.scale, -step / spec.scale};
}

}  // namespace detail

namespace {

std::size_t step_count(double t, double tau) { return static_cast<std::size_t>(std::llround(std::abs(t) / tau)); }

void push(Circuit& c, const std::vector<GateOp>& layer) { c.gates.insert(c.gates.end(), layer.begin(), layer.end()); }

// r symmetric steps of size `step` with merged boundary X half-steps.
void append_trotter_steps(Circuit& c, const TrotterSpec& spec, std::size_t r, double step) {
    if (r == 0) return;
    const int L = spec.num_sites;
    const auto a = detail::step_angles(spec, step);
    for (std::size_t k = 0; k < r; ++k) {
        push(c, detail::x_layer(L, k == 0 ? a.x_half : a.x_full));
        push(c, detail::zz_layer(L, a.zz));
    }
    push(c, detail::x_layer(L, a.x_half));
}

void append_controlled_k(Circuit& c, int L, int control = 0) { push(c, detail::controlled_k_layer(L, control)); }

void left_apply_1q(CMatrix& u, int q, const detail::Mat2& m) {
    const std::ptrdiff_t mask = std::ptrdiff_t{1} << q;
    for (std::ptrdiff_t j = 0; j < u.cols(); ++j) {
        for (std::ptrdiff_t i = 0; i < u.rows(); ++i) {
            if (i & mask) continue;
            const Complex a = u(i, j), b = u(i | mask, j);
            u(i, j) = m(0, 0) * a + m(0, 1) * b;
            u(i | mask, j) = m(1, 0) * a + m(1, 1) * b;
        }
    }
}

void left_apply_2q(CMatrix& u, int q0, int q1, const detail::Mat4& m) {
    const std::ptrdiff_t m0 = std::ptrdiff_t{1} << q0, m1 = std::ptrdiff_t{1} << q1;
    for (std::ptrdiff_t j = 0; j < u.cols(); ++j) {
        for (std::ptrdiff_t i = 0; i < u.rows(); ++i) {
            if ((i & m0) || (i & m1)) continue;
            const std::ptrdiff_t idx[4] = {i, i | m0, i | m1, i | m0 | m1};
            Complex v[4];
            for (int a = 0; a < 4; ++a) v[a] = u(idx[a], j);
            for (int a = 0; a < 4; ++a) u(idx[a], j) = m(a, 0) * v[0] + m(a, 1) * v[1] + m(a, 2) * v[2] + m(a, 3) * v[3];
        }
    }
}

}  // namespace

GateCounts Circuit::counts() const {
    GateCounts c;
    for (const auto& g : gates) {
        if (!g.noisy()) continue;
        if (g.arity() == 1) {
            ++c.single;
        } else {
            ++c.two;
        }
    }
    return c;
}

void Circuit::validate() const {
    if (num_qubits < 1 || num_qubits > kMaxDenseQubits + 1) throw ValidationError("circuit qubit count out of range");
    for (const auto& g : gates) {
        if (g.q0 < 0 || g.q0 >= num_qubits) throw ValidationError("gate qubit index out of range");
        const bool two = g.kind == GateKind::rzz || g.kind == GateKind::cpauli;
        if (two != (g.q1 >= 0)) throw ValidationError("gate arity does not match its kind");
        if (two && (g.q1 >= num_qubits || g.q1 == g.q0)) throw ValidationError("two-qubit gate indices invalid");
        if (g.kind == GateKind::cpauli || g.kind == GateKind::pauli) detail::pauli_index(g.pauli);
        if (g.kind == GateKind::cpauli && g.control != 0 && g.control != 1) throw ValidationError("control value must be 0 or 1");
        if (g.twirl < 0 || g.twirl >= (two ? 16 : 4)) throw ValidationError("twirl frame index out of range");
    }
}

void Circuit::append(const Circuit& other) {
    if (other.num_qubits != num_qubits) throw ValidationError("cannot append circuits of different width");
    gates.insert(gates.end(), other.gates.begin(), other.gates.end());
}

void TrotterSpec::validate() const {
    if (num_sites < 1) throw ValidationError("Trotter site count must be positive");
    if (num_sites > kMaxDenseQubits - 1) throw CapacityError("Trotter site count exceeds the dense limit");
    if (!(tau > 0.0) || !std::isfinite(tau)) throw ValidationError("Trotter step must be positive");
    if (!(scale > 0.0) || !std::isfinite(scale)) throw ValidationError("Hamiltonian scale must be positive");
    if (!std::isfinite(g)) throw ValidationError("field g must be finite");
}

TrotterSpec normalized_tfim_trotter(int num_sites, double g, double tau) {
    const auto eig = eigendecompose(build_tfim(num_sites, g));
    TrotterSpec spec;
    spec.num_sites = num_sites;
    spec.g = g;
    spec.tau = tau;
    spec.scale = std::max(std::abs(eig.values(0)), std::abs(eig.values(eig.values.size() - 1)));
    if (!(spec.scale > 0.0)) throw DegenerateScaleError("Hamiltonian has zero spectral norm");
    spec.validate();
    return spec;
}

Circuit compile_trotter(const TrotterSpec& spec, double t, int num_qubits) {
    spec.validate();
    Circuit c;
    c.num_qubits = num_qubits > 0 ? num_qubits : spec.num_sites;
    if (c.num_qubits < spec.num_sites) throw ValidationError("register smaller than the chain");
    append_trotter_steps(c, spec, step_count(t, spec.tau), t < 0.0 ? -spec.tau : spec.tau);
    return c;
}

std::string k_string(int num_sites) {
    std::string k(static_cast<std::size_t>(num_sites), 'Y');
    for (int j = 1; j < num_sites; j += 2) k[static_cast<std::size_t>(j)] = 'Z';
    return k;
}

Circuit compile_controlled_evolution(const TrotterSpec& spec, double t) {
    spec.validate();
    Circuit c;
    c.num_qubits = spec.num_sites + 1;
    const int control = t < 0.0 ? 1 : 0;
    append_controlled_k(c, spec.num_sites, control);
    append_trotter_steps(c, spec, step_count(t, spec.tau), 0.5 * spec.tau);
    append_controlled_k(c, spec.num_sites, control);
    return c;
}

Circuit compile_benchmark_evolution(const TrotterSpec& spec, double t) {
    spec.validate();
    const std::size_t r = step_count(t, spec.tau);
    const double step = (t < 0.0 ? -0.5 : 0.5) * spec.tau;
    Circuit c;
    c.num_qubits = spec.num_sites + 1;
    append_controlled_k(c, spec.num_sites);
    append_trotter_steps(c, spec, (r + 1) / 2, step);
    append_trotter_steps(c, spec, r / 2, -step);
    append_controlled_k(c, spec.num_sites);
    return c;
}

CMatrix circuit_unitary(const Circuit& circuit) {
    circuit.validate();
    const auto dim = std::ptrdiff_t{1} << circuit.num_qubits;
    CMatrix u = CMatrix::Identity(dim, dim);
    for (const auto& g : circuit.gates) {
        switch (g.kind) {
            case GateKind::rx:
                left_apply_1q(u, g.q0, detail::rx_matrix(g.angle));
                break;
            case GateKind::rzz:
                left_apply_2q(u, g.q0, g.q1, detail::rzz_matrix(g.angle));
                break;
            case GateKind::cpauli:
                left_apply_2q(u, g.q0, g.q1, detail::controlled_pauli_matrix(g.pauli, g.control));
                break;
            case GateKind::h:
                left_apply_1q(u, g.q0, detail::hadamard_matrix());
                break;
            case GateKind::phase:
                left_apply_1q(u, g.q0, detail::phase_matrix(g.angle));
                break;
            case GateKind::pauli:
                left_apply_1q(u, g.q0, detail::pauli_matrix(detail::pauli_index(g.pauli)));
                break;
            case GateKind::measure:
                break;
        }
    }
    return u;
}

double effective_hamiltonian_factor(double gamma, double tau) {
    if (!(tau > 0.0)) throw ValidationError("tau must be positive");
    return 1.0 - gamma / tau;
}

double predicted_coherent_error(double alpha, double tau, int num_sites) {
    if (!(tau > 0.0) || num_sites < 1 || !(alpha >= 0.0)) throw ValidationError("invalid coherent-error inputs");
    return std::sqrt(alpha / (2.0 * tau * num_sites));
}

double snap_time(double t, double tau) {
    if (!(tau > 0.0)) throw ValidationError("tau must be positive");
    return tau * std::round(t / tau);
}

}  // namespace rqcels
