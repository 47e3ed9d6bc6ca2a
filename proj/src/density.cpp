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

#include <Eigen/Eigenvalues>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "gate_matrices.hpp"
#include "rqcels/circuit.hpp"
#include "rqcels/errors.hpp"

namespace rqcels {

namespace {

using detail::Mat2;
using detail::Mat4;

// Sum over all non-identity Paulis on the masked qubits of P rho P:
// 2^n Tr_Q(rho) (x) I_Q - rho.
void depolarize(CMatrix& rho, std::ptrdiff_t mask, int n, double eta) {
    const std::ptrdiff_t dim = rho.rows();
    CMatrix traced = CMatrix::Zero(dim, dim);
    std::vector<std::ptrdiff_t> sub;
    for (std::ptrdiff_t s = mask;; s = (s - 1) & mask) {
        sub.push_back(s);
        if (s == 0) break;
    }
    for (std::ptrdiff_t j = 0; j < dim; ++j) {
        if (j & mask) continue;
        for (std::ptrdiff_t i = 0; i < dim; ++i) {
            if (i & mask) continue;
            Complex acc = 0.0;
            for (auto s : sub) acc += rho(i | s, j | s);
            for (auto s : sub) traced(i | s, j | s) = acc;
        }
    }
    const double w = (1.0 - eta) / (std::pow(4.0, n) - 1.0);
    const double two_n = std::pow(2.0, n);
    rho = (eta - w) * rho + (w * two_n) * traced;
}

void mix_1q(CMatrix& rho, int q, double keep, const std::array<double, 3>& weights, Exec exec) {
    CMatrix acc = keep * rho;
    for (int p = 1; p <= 3; ++p) {
        const double w = (1.0 - keep) * weights[static_cast<std::size_t>(p - 1)];
        if (w == 0.0) continue;
        CMatrix term = rho;
        kernels::conjugate_1q(exec, term, q, detail::pauli_matrix(p));
        acc += w * term;
    }
    rho = std::move(acc);
}

void mix_2q(CMatrix& rho, int q0, int q1, double keep, const std::array<double, 15>& weights, Exec exec) {
    CMatrix acc = keep * rho;
    for (int p = 1; p < 16; ++p) {
        const double w = (1.0 - keep) * weights[static_cast<std::size_t>(p - 1)];
        if (w == 0.0) continue;
        CMatrix term = rho;
        kernels::conjugate_2q(exec, term, q0, q1, detail::pauli_pair(p & 3, p >> 2));
        acc += w * term;
    }
    rho = std::move(acc);
}

void apply_frame(CMatrix& rho, const GateOp& g, Exec exec) {
    if (g.twirl == 0) return;
    if (g.arity() == 1) {
        kernels::conjugate_1q(exec, rho, g.q0, detail::pauli_matrix(g.twirl));
    } else {
        kernels::conjugate_2q(exec, rho, g.q0, g.q1, detail::pauli_pair(g.twirl & 3, g.twirl >> 2));
    }
}

void check_eta(double eta, const char* what) {
    if (!(eta > 0.0 && eta <= 1.0)) throw ValidationError(std::string(what) + " must lie in (0, 1]");
}

std::array<double, 15> uniform15() {
    std::array<double, 15> w;
    w.fill(1.0 / 15.0);
    return w;
}

CVector lift_to_register(const StateVector& psi) {
    CVector v = CVector::Zero(static_cast<std::ptrdiff_t>(2 * psi.dim()));
    v.head(static_cast<std::ptrdiff_t>(psi.dim())) = psi.amplitudes();
    return v;
}

GateOp single(GateKind kind, int q, double angle = 0.0) {
    GateOp g;
    g.kind = kind;
    g.q0 = q;
    g.angle = angle;
    return g;
}

}  // namespace

DensityMatrix::DensityMatrix(CMatrix entries) : rho_(std::move(entries)) {
    if (rho_.rows() != rho_.cols() || rho_.rows() < 2) throw ValidationError("density matrix must be square");
    const auto dim = static_cast<std::size_t>(rho_.rows());
    if ((dim & (dim - 1)) != 0) throw ValidationError("density matrix dimension must be a power of two");
    num_qubits_ = static_cast<int>(std::log2(static_cast<double>(dim)) + 0.5);
    if (hermiticity_deviation() > 1e-10) throw ValidationError("density matrix is not Hermitian");
    if (trace_deviation() > 1e-10) throw ValidationError("density matrix trace differs from one");
}

DensityMatrix DensityMatrix::pure(const CVector& amplitudes) {
    if (std::abs(amplitudes.norm() - 1.0) > 1e-12) throw ValidationError("pure state must be normalized");
    return DensityMatrix(amplitudes * amplitudes.adjoint());
}

double DensityMatrix::trace_deviation() const { return std::abs(rho_.trace() - Complex(1.0)); }

double DensityMatrix::hermiticity_deviation() const { return (rho_ - rho_.adjoint()).cwiseAbs().maxCoeff(); }

double DensityMatrix::min_eigenvalue() const {
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(rho_, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

double DensityMatrix::probability_zero(int qubit) const {
    if (qubit < 0 || qubit >= num_qubits_) throw ValidationError("measured qubit out of range");
    const std::ptrdiff_t mask = std::ptrdiff_t{1} << qubit;
    double p = 0.0;
    for (std::ptrdiff_t i = 0; i < rho_.rows(); ++i) {
        if (!(i & mask)) p += rho_(i, i).real();
    }
    return p;
}

std::string_view noise_family_name(NoiseFamily f) {
    switch (f) {
        case NoiseFamily::none:
            return "none";
        case NoiseFamily::depolarizing:
            return "depolarizing";
        case NoiseFamily::phase_flip:
            return "phase_flip";
        case NoiseFamily::bit_flip:
            return "bit_flip";
        case NoiseFamily::pauli:
            return "pauli";
        case NoiseFamily::coherent:
            return "coherent";
    }
    return "unknown";
}

NoiseFamily parse_noise_family(std::string_view name) {
    for (auto f : {NoiseFamily::none, NoiseFamily::depolarizing, NoiseFamily::phase_flip, NoiseFamily::bit_flip,
                   NoiseFamily::pauli, NoiseFamily::coherent}) {
        if (noise_family_name(f) == name) return f;
    }
    throw ValidationError("unknown noise family '" + std::string(name) + "'");
}

LocalNoiseSpec::LocalNoiseSpec() : weights2(uniform15()) {}

LocalNoiseSpec LocalNoiseSpec::depolarizing(double eta1, double eta2) {
    LocalNoiseSpec s;
    s.family = NoiseFamily::depolarizing;
    s.eta1 = eta1;
    s.eta2 = eta2;
    s.validate();
    return s;
}

LocalNoiseSpec LocalNoiseSpec::phase_flip(double eta1, double eta2) {
    auto s = depolarizing(eta1, eta2);
    s.family = NoiseFamily::phase_flip;
    return s;
}

LocalNoiseSpec LocalNoiseSpec::bit_flip(double eta1, double eta2) {
    auto s = depolarizing(eta1, eta2);
    s.family = NoiseFamily::bit_flip;
    return s;
}

LocalNoiseSpec LocalNoiseSpec::pauli(double eta1, double eta2, const std::array<double, 3>& w1,
                                     const std::array<double, 15>& w2) {
    LocalNoiseSpec s;
    s.family = NoiseFamily::pauli;
    s.eta1 = eta1;
    s.eta2 = eta2;
    s.weights1 = w1;
    s.weights2 = w2;
    s.validate();
    return s;
}

LocalNoiseSpec LocalNoiseSpec::coherent(double gamma1, double gamma2) {
    LocalNoiseSpec s;
    s.family = NoiseFamily::coherent;
    s.gamma1 = gamma1;
    s.gamma2 = gamma2;
    s.eta1 = std::pow(std::cos(gamma1), 2);
    s.eta2 = std::pow(std::cos(gamma2), 2);
    s.validate();
    return s;
}

void LocalNoiseSpec::validate() const {
    if (family == NoiseFamily::none) return;
    if (family == NoiseFamily::coherent) {
        if (!std::isfinite(gamma1) || !std::isfinite(gamma2)) throw ValidationError("coherent angles must be finite");
        return;
    }
    check_eta(eta1, "eta1");
    check_eta(eta2, "eta2");
    if (family == NoiseFamily::pauli) {
        auto check = [](auto const& w) {
            double sum = 0.0;
            for (double x : w) {
                if (!(x >= 0.0)) throw ValidationError("Pauli weights must be nonnegative");
                sum += x;
            }
            if (std::abs(sum - 1.0) > 1e-12) throw ValidationError("Pauli weights must sum to one");
        };
        check(weights1);
        check(weights2);
    }
}

FidelityParams solve_fidelity_params(double alpha, double t, std::size_t n_g1, std::size_t n_g2) {
    if (!(alpha >= 0.0) || !std::isfinite(alpha) || !std::isfinite(t)) {
        throw ValidationError("alpha must be >= 0 and t finite");
    }
    const double log_target = -alpha * std::abs(t);
    if (log_target == 0.0) return {};
    if (n_g1 == 0 && n_g2 == 0) throw ValidationError("gate counts are both zero but noise is requested");
    const double target = std::exp(log_target);
    if (!(target > 0.0)) throw InfeasibleError("target fidelity underflows");

    // delta = 1 - eta1 = k 2^-53 keeps eta1, eta2 = 1 - 10 delta and both
    // complements exactly representable.
    const double unit = std::ldexp(1.0, -53);
    const double n1 = static_cast<double>(n_g1), n2 = static_cast<double>(n_g2);
    auto log_product = [&](std::int64_t k) {
        const double d = static_cast<double>(k) * unit;
        return n1 * std::log1p(-d) + n2 * std::log1p(-10.0 * d);
    };
    std::int64_t lo = 0;
    std::int64_t hi = static_cast<std::int64_t>(std::floor(0.1 / unit)) - 1;
    if (log_product(hi) > log_target) {
        throw InfeasibleError("noise too strong: requires eta2 <= 0 under 1 - eta2 = 10 (1 - eta1)");
    }
    while (hi - lo > 1) {
        const std::int64_t mid = lo + (hi - lo) / 2;
        if (log_product(mid) > log_target) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    auto params = [&](std::int64_t k) {
        const double d = static_cast<double>(k) * unit;
        return FidelityParams{1.0 - d, 1.0 - 10.0 * d};
    };
    auto residual = [&](const FidelityParams& p) {
        return std::abs(target - std::pow(p.eta1, n1) * std::pow(p.eta2, n2));
    };
    const auto a = params(lo), b = params(hi);
    return residual(a) <= residual(b) ? a : b;
}

CoherentAngles coherent_params(double eta1, double eta2) {
    check_eta(eta1, "eta1");
    check_eta(eta2, "eta2");
    return {std::acos(std::sqrt(eta1)), std::acos(std::sqrt(eta2))};
}

LocalNoiseSpec calibrate_local_noise(NoiseFamily family, double alpha, double t, GateCounts counts) {
    if (family == NoiseFamily::none) return LocalNoiseSpec::noiseless();
    const auto f = solve_fidelity_params(alpha, t, counts.single, counts.two);
    switch (family) {
        case NoiseFamily::depolarizing:
            return LocalNoiseSpec::depolarizing(f.eta1, f.eta2);
        case NoiseFamily::phase_flip:
            return LocalNoiseSpec::phase_flip(f.eta1, f.eta2);
        case NoiseFamily::bit_flip:
            return LocalNoiseSpec::bit_flip(f.eta1, f.eta2);
        case NoiseFamily::pauli:
            return LocalNoiseSpec::pauli(f.eta1, f.eta2, {1.0 / 3, 1.0 / 3, 1.0 / 3}, uniform15());
        case NoiseFamily::coherent: {
            const auto g = coherent_params(f.eta1, f.eta2);
            return LocalNoiseSpec::coherent(g.gamma1, g.gamma2);
        }
        case NoiseFamily::none:
            break;
    }
    return LocalNoiseSpec::noiseless();
}

LocalNoiseSpec twirled_equivalent(const LocalNoiseSpec& spec) {
    if (spec.family != NoiseFamily::coherent) return spec;
    std::array<double, 15> w2{};
    w2[15 - 1] = 1.0;  // Z (x) Z = index 3 + 4 * 3
    const double c1 = std::cos(spec.gamma1), c2 = std::cos(spec.gamma2);
    LocalNoiseSpec s = LocalNoiseSpec::pauli(c1 * c1, c2 * c2, {1.0, 0.0, 0.0}, w2);
    return s;
}

void apply_gate(DensityMatrix& state, const GateOp& g, Exec exec) {
    CMatrix& rho = state.mutable_matrix();
    switch (g.kind) {
        case GateKind::rx:
            kernels::conjugate_1q(exec, rho, g.q0, detail::rx_matrix(g.angle));
            break;
        case GateKind::rzz:
            kernels::conjugate_2q(exec, rho, g.q0, g.q1, detail::rzz_matrix(g.angle));
            break;
        case GateKind::cpauli:
            kernels::conjugate_2q(exec, rho, g.q0, g.q1, detail::controlled_pauli_matrix(g.pauli, g.control));
            break;
        case GateKind::h:
            kernels::conjugate_1q(exec, rho, g.q0, detail::hadamard_matrix());
            break;
        case GateKind::phase:
            kernels::conjugate_1q(exec, rho, g.q0, detail::phase_matrix(g.angle));
            break;
        case GateKind::pauli:
            kernels::conjugate_1q(exec, rho, g.q0, detail::pauli_matrix(detail::pauli_index(g.pauli)));
            break;
        case GateKind::measure:
            break;
    }
}

void apply_channel(DensityMatrix& state, const LocalNoiseSpec& spec, const GateOp& g, Exec exec) {
    if (!g.noisy() || spec.family == NoiseFamily::none) return;
    CMatrix& rho = state.mutable_matrix();
    const bool one = g.arity() == 1;
    const double eta = one ? spec.eta1 : spec.eta2;
    apply_frame(rho, g, exec);
    switch (spec.family) {
        case NoiseFamily::depolarizing: {
            if (eta == 1.0) break;
            std::ptrdiff_t mask = std::ptrdiff_t{1} << g.q0;
            if (!one) mask |= std::ptrdiff_t{1} << g.q1;
            depolarize(rho, mask, one ? 1 : 2, eta);
            break;
        }
        case NoiseFamily::phase_flip:
        case NoiseFamily::bit_flip: {
            if (eta == 1.0) break;
            const std::array<double, 3> w =
                spec.family == NoiseFamily::phase_flip ? std::array<double, 3>{0, 0, 1} : std::array<double, 3>{1, 0, 0};
            if (one) {
                mix_1q(rho, g.q0, eta, w, exec);
            } else {
                const double root = std::sqrt(eta);
                mix_1q(rho, g.q0, root, w, exec);
                mix_1q(rho, g.q1, root, w, exec);
            }
            break;
        }
        case NoiseFamily::pauli:
            if (eta == 1.0) break;
            if (one) {
                mix_1q(rho, g.q0, eta, spec.weights1, exec);
            } else {
                mix_2q(rho, g.q0, g.q1, eta, spec.weights2, exec);
            }
            break;
        case NoiseFamily::coherent:
            if (one) {
                kernels::conjugate_1q(exec, rho, g.q0, detail::rx_matrix(spec.gamma1));
            } else {
                kernels::conjugate_2q(exec, rho, g.q0, g.q1, detail::rzz_matrix(spec.gamma2));
            }
            break;
        case NoiseFamily::none:
            break;
    }
    apply_frame(rho, g, exec);
}

void run_circuit(DensityMatrix& rho, const Circuit& circuit, const LocalNoiseSpec& spec, Exec exec) {
    if (circuit.num_qubits != rho.num_qubits()) throw ValidationError("circuit and state widths differ");
    for (const auto& g : circuit.gates) {
        apply_gate(rho, g, exec);
        apply_channel(rho, spec, g, exec);
    }
}

InitialState InitialState::plus(int num_sites) { return {StateVector::plus_state(num_sites), true}; }

InitialState InitialState::exact(StateVector psi) { return {std::move(psi), false}; }

Circuit hadamard_test_circuit(const Circuit& evolution, const InitialState& init, PhaseGate w) {
    const int anc = evolution.num_qubits - 1;
    if (static_cast<std::size_t>(1) << anc != init.psi.dim()) {
        throw ValidationError("initial state does not match the evolution register");
    }
    Circuit c;
    c.num_qubits = evolution.num_qubits;
    if (init.hadamard_layer) {
        for (int q = 0; q < anc; ++q) c.gates.push_back(single(GateKind::h, q));
    }
    c.gates.push_back(single(GateKind::h, anc));
    if (w == PhaseGate::s_dagger) c.gates.push_back(single(GateKind::phase, anc, -M_PI / 2.0));
    c.gates.insert(c.gates.end(), evolution.gates.begin(), evolution.gates.end());
    c.gates.push_back(single(GateKind::h, anc));
    c.gates.push_back(single(GateKind::measure, anc));
    return c;
}

DensityMatrix detail::initial_density(const InitialState& init) {
    if (init.hadamard_layer) {
        return DensityMatrix::pure(StateVector::basis_state(2 * init.psi.dim(), 0).amplitudes());
    }
    return DensityMatrix::pure(lift_to_register(init.psi));
}

HadamardOutcome run_hadamard_test(const Circuit& evolution, const LocalNoiseSpec& spec, const InitialState& init,
                                  PhaseGate w, Exec exec) {
    spec.validate();
    const Circuit full = hadamard_test_circuit(evolution, init, w);
    full.validate();
    DensityMatrix rho = detail::initial_density(init);
    run_circuit(rho, full, spec, exec);
    HadamardOutcome out;
    out.p0 = rho.probability_zero(full.num_qubits - 1);
    out.expectation = 2.0 * out.p0 - 1.0;
    return out;
}

double run_benchmark_circuit(const TrotterSpec& trotter, double t, const LocalNoiseSpec& spec,
                             const InitialState& init, Exec exec) {
    return run_hadamard_test(compile_benchmark_evolution(trotter, t), spec, init, PhaseGate::identity, exec)
        .expectation;
}

std::vector<Circuit> pauli_twirl(const Circuit& circuit, const LocalNoiseSpec& spec, std::size_t instances,
                                 Seed seed) {
    if (spec.family != NoiseFamily::coherent && spec.family != NoiseFamily::pauli &&
        spec.family != NoiseFamily::none) {
        throw ValidationError("Pauli twirling expects a coherent or Pauli noise spec");
    }
    std::vector<Circuit> out;
    out.reserve(instances);
    for (std::size_t m = 0; m < instances; ++m) {
        Engine engine = make_engine(derive_seed(seed, {stream::kTwirl, m}));
        Circuit c = circuit;
        for (auto& g : c.gates) {
            if (!g.noisy()) continue;
            std::uniform_int_distribution<int> frame(0, g.arity() == 1 ? 3 : 15);
            g.twirl = frame(engine);
        }
        out.push_back(std::move(c));
    }
    return out;
}

}  // namespace rqcels
