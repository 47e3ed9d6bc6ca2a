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

#ifndef RQCELS_CIRCUIT_HPP
#define RQCELS_CIRCUIT_HPP

#include <array>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "rqcels/kernels.hpp"
#include "rqcels/sampling.hpp"
#include "rqcels/spectral.hpp"

namespace rqcels {

// Qubit q is bit q of the basis index. In Hadamard-test circuits the system
// occupies qubits 0..L-1 and the ancilla is qubit L.

enum class GateKind {
    rx,       // exp(-i angle X) on q0
    rzz,      // exp(-i angle Z Z) on (q0, q1)
    cpauli,   // Pauli `pauli` on q1 when control q0 is |control>
    h,        // Hadamard on q0
    phase,    // diag(1, exp(i angle)) on q0
    pauli,    // noiseless Pauli `pauli` on q0 (twirl frames)
    measure,  // Z measurement of q0, terminal
};

struct GateOp {
    GateKind kind = GateKind::h;
    int q0 = 0;
    int q1 = -1;
    double angle = 0.0;
    char pauli = 'I';
    /// Random Pauli frame around the noise of this gate: 0..3 (one qubit) or
    /// a + 4 b (two qubits), 0 = none.
    int twirl = 0;
    /// Ancilla value that triggers a cpauli gate.
    int control = 0;

    int arity() const { return q1 >= 0 ? 2 : 1; }
    bool noisy() const { return kind != GateKind::pauli && kind != GateKind::measure; }
};

struct GateCounts {
    std::size_t single = 0;  // n_{g,1}
    std::size_t two = 0;     // n_{g,2}
};

struct Circuit {
    int num_qubits = 0;
    std::vector<GateOp> gates;

    GateCounts counts() const;
    /// Throws ValidationError on out-of-range or repeated qubit indices.
    void validate() const;
    void append(const Circuit& other);
};

/// Trotterization of exp(-i t H / scale) for H = -sum Z_i Z_{i+1} - g sum X_i.
struct TrotterSpec {
    int num_sites = 4;
    double g = 1.0;
    double tau = 0.01;
    double scale = 1.0;

    void validate() const;
    /// |angle| of one full-step X rotation per unit coefficient, tau / scale.
    double gate_step() const { return tau / scale; }
};

/// TrotterSpec whose scale normalizes TFIM(num_sites, g) to unit norm.
TrotterSpec normalized_tfim_trotter(int num_sites, double g, double tau);

/// round(|t| / tau) symmetric steps of sign(t) tau with merged boundary
/// half-steps, on qubits 0..L-1 of a `num_qubits` register (default L).
Circuit compile_trotter(const TrotterSpec& spec, double t, int num_qubits = 0);

/// Pauli string K (Y on even sites, Z on odd sites) with K H K = -H.
std::string k_string(int num_sites);

/// Controlled-K, Trotterized exp(-i (|t|/2) H) in round(|t|/tau) steps of
/// tau/2, controlled-K. Ancilla-conditioned blocks diag(exp(itH/2), exp(-itH/2)).
/// Negative t keeps the forward steps and moves K to the ancilla-|1> block.
Circuit compile_controlled_evolution(const TrotterSpec& spec, double t);

/// Forward ceil(r/2) then backward floor(r/2) steps inside the K sandwich,
/// r = round(|t|/tau); realizes a residual evolution of at most tau.
Circuit compile_benchmark_evolution(const TrotterSpec& spec, double t);

/// Noiseless unitary of a circuit (no measurement gates), dimension 2^num_qubits.
CMatrix circuit_unitary(const Circuit& circuit);

class DensityMatrix {
   public:
    /// Validates Hermiticity and unit trace within 1e-10.
    explicit DensityMatrix(CMatrix entries);
    static DensityMatrix pure(const CVector& amplitudes);

    int num_qubits() const { return num_qubits_; }
    std::size_t dim() const { return static_cast<std::size_t>(rho_.rows()); }
    const CMatrix& matrix() const { return rho_; }
    CMatrix& mutable_matrix() { return rho_; }

    double trace_deviation() const;
    double hermiticity_deviation() const;
    double min_eigenvalue() const;
    /// Probability of outcome 0 when measuring `qubit` in Z.
    double probability_zero(int qubit) const;

   private:
    CMatrix rho_;
    int num_qubits_ = 0;
};

enum class NoiseFamily { none, depolarizing, phase_flip, bit_flip, pauli, coherent };

std::string_view noise_family_name(NoiseFamily f);
NoiseFamily parse_noise_family(std::string_view name);

struct LocalNoiseSpec {
    NoiseFamily family = NoiseFamily::none;
    double eta1 = 1.0;
    double eta2 = 1.0;
    /// Weights of X, Y, Z for single-qubit gates (pauli family).
    std::array<double, 3> weights1{1.0 / 3, 1.0 / 3, 1.0 / 3};
    /// Weights of the 15 non-identity Paulis a + 4 b, index 1..15 stored at 0..14.
    std::array<double, 15> weights2{};
    double gamma1 = 0.0;
    double gamma2 = 0.0;

    LocalNoiseSpec();
    static LocalNoiseSpec noiseless() { return LocalNoiseSpec(); }
    static LocalNoiseSpec depolarizing(double eta1, double eta2);
    static LocalNoiseSpec phase_flip(double eta1, double eta2);
    static LocalNoiseSpec bit_flip(double eta1, double eta2);
    static LocalNoiseSpec pauli(double eta1, double eta2, const std::array<double, 3>& w1,
                                const std::array<double, 15>& w2);
    static LocalNoiseSpec coherent(double gamma1, double gamma2);

    void validate() const;
};

struct FidelityParams {
    double eta1 = 1.0;
    double eta2 = 1.0;
};

/// Solves exp(-alpha |t|) = eta1^n1 eta2^n2 with 1 - eta2 = 10 (1 - eta1).
FidelityParams solve_fidelity_params(double alpha, double t, std::size_t n_g1, std::size_t n_g2);

struct CoherentAngles {
    double gamma1 = 0.0;
    double gamma2 = 0.0;
};

/// gamma_i = arccos(sqrt(eta_i)).
CoherentAngles coherent_params(double eta1, double eta2);

/// Local spec of `family` whose product fidelity over `counts` equals exp(-alpha |t|).
LocalNoiseSpec calibrate_local_noise(NoiseFamily family, double alpha, double t, GateCounts counts);

/// Pauli channel reached by twirling `spec` (identity map for Pauli families).
LocalNoiseSpec twirled_equivalent(const LocalNoiseSpec& spec);

/// Noise channel that follows `gate`; the gate itself must already be applied.
void apply_channel(DensityMatrix& rho, const LocalNoiseSpec& spec, const GateOp& gate, Exec exec = Exec::serial);

/// Unitary part of `gate` (measurement gates are ignored).
void apply_gate(DensityMatrix& rho, const GateOp& gate, Exec exec = Exec::serial);

/// Gate followed by its noise channel, for every gate in order.
void run_circuit(DensityMatrix& rho, const Circuit& circuit, const LocalNoiseSpec& spec, Exec exec = Exec::serial);

/// System input of a Hadamard test: either an exact state vector or the
/// |+>^L state prepared by a (noisy) Hadamard layer from |0...0>.
struct InitialState {
    StateVector psi;
    bool hadamard_layer = false;

    static InitialState plus(int num_sites);
    static InitialState exact(StateVector psi);
};

enum class PhaseGate { identity, s_dagger };

struct HadamardOutcome {
    double p0 = 0.0;
    double expectation = 0.0;  // p0 - p1
};

/// Full density-matrix run: ancilla H, optional S^dagger, `evolution`, ancilla H, measurement.
HadamardOutcome run_hadamard_test(const Circuit& evolution, const LocalNoiseSpec& spec, const InitialState& init,
                                  PhaseGate w, Exec exec = Exec::serial);

/// Full Hadamard-test circuit (including preparation) that run_hadamard_test executes.
Circuit hadamard_test_circuit(const Circuit& evolution, const InitialState& init, PhaseGate w);

/// Real-part Hadamard test of the benchmark evolution at time t.
double run_benchmark_circuit(const TrotterSpec& trotter, double t, const LocalNoiseSpec& spec,
                             const InitialState& init, Exec exec = Exec::serial);

/// Randomized frames: every noisy gate receives a uniformly random Pauli
/// frame around its error. Noiseless statistics are unchanged.
std::vector<Circuit> pauli_twirl(const Circuit& circuit, const LocalNoiseSpec& spec, std::size_t instances,
                                 Seed seed);

/// 1 - gamma / tau.
double effective_hamiltonian_factor(double gamma, double tau);

/// sqrt(alpha / (2 tau L)), the small-angle relative energy error.
double predicted_coherent_error(double alpha, double tau, int num_sites);

/// Circuit-level signal source for the estimators.
struct CircuitExperiment {
    TrotterSpec trotter;
    LocalNoiseSpec noise;
    InitialState init = InitialState::plus(4);
    /// Random Pauli-frame instances averaged per expectation, 0 = no twirling.
    std::size_t twirl_instances = 0;
    /// Frame stream for benchmark twirling.
    Seed twirl_seed = 0;
};

/// Snaps t to the nearest multiple of tau.
double snap_time(double t, double tau);

/// Hadamard-test expectations Re + i Im at t = k tau for k = 0..max_steps
/// (sign chooses the direction), propagated step by step.
std::vector<Complex> circuit_signal_table(const CircuitExperiment& experiment, std::size_t max_steps, int sign,
                                          Seed seed, Exec exec = Exec::serial);

/// Dataset with times drawn from `dist` and snapped to the tau grid.
Dataset generate_circuit_dataset(const CircuitExperiment& experiment, const TimeDistribution& dist,
                                 std::size_t n_times, ShotBudget shots, Seed seed, Exec exec = Exec::parallel);

/// Benchmark expectations at the given times.
std::vector<double> circuit_benchmark_means(const CircuitExperiment& experiment, std::span<const double> times,
                                            Exec exec = Exec::serial);

}  // namespace rqcels

#endif  // RQCELS_CIRCUIT_HPP
