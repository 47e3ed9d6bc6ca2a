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
#include <optional>
#include <random>

#include "gate_matrices.hpp"
#include "rqcels/circuit.hpp"
#include "rqcels/errors.hpp"

namespace rqcels {

namespace {

// Applies gates with their noise; draws a fresh Pauli frame per noisy gate
// when `frames` is set.
class NoisyRunner {
   public:
    NoisyRunner(const LocalNoiseSpec& spec, std::optional<Engine> frames) : spec_(spec), frames_(std::move(frames)) {}

    void run(DensityMatrix& rho, const std::vector<GateOp>& gates) {
        for (GateOp g : gates) {
            if (frames_ && g.noisy()) {
                std::uniform_int_distribution<int> frame(0, g.arity() == 1 ? 3 : 15);
                g.twirl = frame(*frames_);
            }
            apply_gate(rho, g);
            apply_channel(rho, spec_, g);
        }
    }

   private:
    const LocalNoiseSpec& spec_;
    std::optional<Engine> frames_;
};

GateOp single(GateKind kind, int q, double angle = 0.0) {
    GateOp g;
    g.kind = kind;
    g.q0 = q;
    g.angle = angle;
    return g;
}

std::vector<double> chain(const CircuitExperiment& ex, std::size_t max_steps, int sign, PhaseGate w,
                          std::optional<Engine> frames) {
    const int L = ex.trotter.num_sites;
    NoisyRunner runner(ex.noise, std::move(frames));
    const auto ck = detail::controlled_k_layer(L, sign < 0 ? 1 : 0);
    const auto a = detail::step_angles(ex.trotter, 0.5 * ex.trotter.tau);
    const auto x_half = detail::x_layer(L, a.x_half);
    const auto x_full = detail::x_layer(L, a.x_full);
    const auto zz = detail::zz_layer(L, a.zz);

    std::vector<GateOp> prefix;
    if (ex.init.hadamard_layer) {
        for (int q = 0; q < L; ++q) prefix.push_back(single(GateKind::h, q));
    }
    prefix.push_back(single(GateKind::h, L));
    if (w == PhaseGate::s_dagger) prefix.push_back(single(GateKind::phase, L, -M_PI / 2.0));
    prefix.insert(prefix.end(), ck.begin(), ck.end());

    std::vector<GateOp> tail = ck;
    tail.push_back(single(GateKind::h, L));

    auto finish = [&](DensityMatrix snap, bool close_step) {
        if (close_step) runner.run(snap, x_half);
        runner.run(snap, tail);
        return 2.0 * snap.probability_zero(L) - 1.0;
    };

    DensityMatrix rho = detail::initial_density(ex.init);
    runner.run(rho, prefix);
    std::vector<double> out(max_steps + 1);
    out[0] = finish(rho, false);
    for (std::size_t k = 1; k <= max_steps; ++k) {
        runner.run(rho, k == 1 ? x_half : x_full);
        runner.run(rho, zz);
        out[k] = finish(rho, true);
    }
    return out;
}

}  // namespace

std::vector<Complex> circuit_signal_table(const CircuitExperiment& ex, std::size_t max_steps, int sign, Seed seed,
                                          Exec exec) {
    ex.trotter.validate();
    ex.noise.validate();
    if (static_cast<std::size_t>(1) << ex.trotter.num_sites != ex.init.psi.dim()) {
        throw ValidationError("initial state does not match the chain length");
    }
    const bool twirl = ex.twirl_instances > 0;
    if (twirl && ex.noise.family != NoiseFamily::coherent && ex.noise.family != NoiseFamily::pauli) {
        throw ValidationError("Pauli twirling expects a coherent or Pauli noise spec");
    }
    const std::size_t instances = twirl ? ex.twirl_instances : 1;
    const auto jobs = static_cast<std::ptrdiff_t>(2 * instances);
    std::vector<std::vector<double>> parts(static_cast<std::size_t>(jobs));

#pragma omp parallel for schedule(dynamic) if (exec == Exec::parallel)
    for (std::ptrdiff_t j = 0; j < jobs; ++j) {
        const auto part = static_cast<std::uint64_t>(j % 2);
        const auto m = static_cast<std::uint64_t>(j / 2);
        std::optional<Engine> frames;
        if (twirl) frames = make_engine(derive_seed(seed, {stream::kTwirl, part, m}));
        parts[static_cast<std::size_t>(j)] =
            chain(ex, max_steps, sign, part == 0 ? PhaseGate::identity : PhaseGate::s_dagger, std::move(frames));
    }

    std::vector<Complex> table(max_steps + 1, Complex(0.0));
    for (std::size_t j = 0; j < parts.size(); ++j) {
        for (std::size_t k = 0; k <= max_steps; ++k) {
            if (j % 2 == 0) {
                table[k] += Complex(parts[j][k], 0.0);
            } else {
                table[k] += Complex(0.0, parts[j][k]);
            }
        }
    }
    for (auto& v : table) v /= static_cast<double>(instances);
    return table;
}

Dataset generate_circuit_dataset(const CircuitExperiment& ex, const TimeDistribution& dist, std::size_t n_times,
                                 ShotBudget shots, Seed seed, Exec exec) {
    if (n_times == 0) throw ValidationError("dataset needs at least one time sample");
    const double tau = ex.trotter.tau;
    auto times = sample_times(dist, n_times, derive_seed(seed, {stream::kTimes}));
    std::size_t max_pos = 0, max_neg = 0;
    std::vector<std::size_t> steps(times.size());
    for (std::size_t n = 0; n < times.size(); ++n) {
        times[n] = snap_time(times[n], tau);
        steps[n] = static_cast<std::size_t>(std::llround(std::abs(times[n]) / tau));
        if (times[n] < 0.0) {
            max_neg = std::max(max_neg, steps[n]);
        } else {
            max_pos = std::max(max_pos, steps[n]);
        }
    }
    const auto pos = circuit_signal_table(ex, max_pos, +1, derive_seed(seed, {stream::kTwirl, 0}), exec);
    const auto neg = circuit_signal_table(ex, max_neg, -1, derive_seed(seed, {stream::kTwirl, 1}), exec);
    DatasetMeta meta{dist.width(), dist.gamma(), shots, seed};
    return sample_dataset(
        times,
        [&](std::size_t n, double t) { return t < 0.0 ? neg[steps[n]] : pos[steps[n]]; }, meta, exec);
}

std::vector<double> circuit_benchmark_means(const CircuitExperiment& ex, std::span<const double> times, Exec exec) {
    ex.trotter.validate();
    ex.noise.validate();
    const auto total = static_cast<std::ptrdiff_t>(times.size());
    std::vector<double> out(times.size());
    const bool twirl = ex.twirl_instances > 0;
#pragma omp parallel for schedule(dynamic) if (exec == Exec::parallel)
    for (std::ptrdiff_t n = 0; n < total; ++n) {
        const auto idx = static_cast<std::size_t>(n);
        const Circuit evo = compile_benchmark_evolution(ex.trotter, times[idx]);
        if (!twirl) {
            out[idx] = run_hadamard_test(evo, ex.noise, ex.init, PhaseGate::identity).expectation;
            continue;
        }
        const Circuit full = hadamard_test_circuit(evo, ex.init, PhaseGate::identity);
        double acc = 0.0;
        for (const auto& inst : pauli_twirl(full, ex.noise, ex.twirl_instances, derive_seed(ex.twirl_seed, {stream::kTwirl, idx}))) {
            DensityMatrix rho = detail::initial_density(ex.init);
            run_circuit(rho, inst, ex.noise);
            acc += 2.0 * rho.probability_zero(full.num_qubits - 1) - 1.0;
        }
        out[idx] = acc / static_cast<double>(ex.twirl_instances);
    }
    return out;
}

}  // namespace rqcels
