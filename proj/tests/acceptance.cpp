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

// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "rqcels/alpha_fit.hpp"
#include "rqcels/circuit.hpp"
#include "rqcels/estimators.hpp"
#include "rqcels/harness.hpp"

using namespace rqcels;

namespace {

// Tolerances.
constexpr double kP0 = 0.8134, kP0Tol = 5e-4;
constexpr double kGap = 0.25, kGapTol = 0.01;
constexpr double kCrit1Seconds = 1.0;
constexpr double kAlphaTol = 0.02;
constexpr int kAlphaMinHits = 95;
constexpr double kCrit2Seconds = 10.0;
constexpr double kRobustMedian = 3e-3;
constexpr double kCrit3Seconds = 300.0;
constexpr double kQpePlateau = 2.0;
constexpr double kSlopeLo = -1.5, kSlopeHi = -0.5;
constexpr double kRobustAdvantage = 3.0;
constexpr double kCrit4Seconds = 900.0;
constexpr double kIdentityTol = 1e-10;
constexpr double kRpeTol = 1e-12;
constexpr double kFloorRel = 0.25;
constexpr double kFloorMonotone = 0.9;  // smallest later error / first error
constexpr double kTrotterBound = 5.0e-5 + 1e-9;
constexpr double kFidelityTol = 1e-12;
constexpr double kLocalRatio = 5.0;
constexpr double kCrit10Seconds = 1800.0;
constexpr double kShiftRel = 0.20;
constexpr double kBenchRel = 0.05;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

int failures = 0;

void report(int id, bool pass, const std::string& detail) {
    if (!pass) ++failures;
    std::printf("criterion %2d: %s  %s\n", id, pass ? "PASS" : "FAIL", detail.c_str());
    std::fflush(stdout);
}

template <class... Args>
std::string format(const char* fmt, Args... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, fmt, args...);
    return buf;
}

void guarded(int id, const std::function<void()>& body) {
    try {
        body();
    } catch (const std::exception& e) {
        report(id, false, std::string("exception: ") + e.what());
    }
}

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

// Mean error per (method, t_max) over successful rows.
std::map<std::string, std::map<double, double>> mean_errors(const SweepResult& r) {
    std::map<std::string, std::map<double, double>> out;
    for (const auto& a : r.aggregate()) out[a.method][a.t_max] = a.mean_error;
    return out;
}

double loglog_slope(const std::map<double, double>& curve) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(curve.size());
    for (const auto& [t, e] : curve) {
        const double x = std::log(t), y = std::log(e);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

ExperimentConfig tfim_config() {
    ExperimentConfig c;
    c.num_sites = 4;
    c.g = 1.0;
    c.alphas = {0.25};
    c.n_t = 10000;
    c.n_s1 = 10000;
    c.n_s2 = 500;
    c.repetitions = 10;
    c.seed = 2026;
    return c;
}

void criterion1() {
    const auto start = Clock::now();
    const auto model = make_model(build_tfim(4, 1.0), StateVector::plus_state(4));
    const double secs = seconds_since(start);
    const double p0 = model.overlaps()[0];
    const double gap = model.gap();
    const bool ok = std::abs(p0 - kP0) <= kP0Tol && std::abs(gap - kGap) <= kGapTol && secs < kCrit1Seconds;
    report(1, ok, format("p0=%.6f (want %.4f+-%.4f) gap=%.6f (want %.2f+-%.2f) %.3fs", p0, kP0, kP0Tol, gap, kGap,
                         kGapTol, secs));
}

void criterion2() {
    const auto start = Clock::now();
    const double alpha = 0.25;
    const auto times = default_benchmark_times(alpha, 10);
    int hits = 0;
    for (Seed s = 0; s < 100; ++s) {
        const auto rec = generate_benchmarks(GlobalDepolarizing(alpha), times, ShotBudget(10000), 7000 + s);
        if (std::abs(fit_alpha(rec).alpha_hat - alpha) <= kAlphaTol) ++hits;
    }
    const double secs = seconds_since(start);
    report(2, hits >= kAlphaMinHits && secs < kCrit2Seconds,
           format("%d/100 within %.2f (need %d) %.2fs", hits, kAlphaTol, kAlphaMinHits, secs));
}

void criterion3() {
    auto cfg = tfim_config();
    cfg.alpha_source = AlphaSource::exact;
    cfg.methods = {Method::robust_qcels};
    cfg.t_max = {default_t_max_grid(0.25, cfg.t_max_points).back()};
    const auto start = Clock::now();
    const auto result = run_experiment(cfg);
    const double secs = seconds_since(start);
    std::vector<double> errors;
    for (const auto& r : result.rows)
        if (r.ok()) errors.push_back(r.error);
    const bool complete = errors.size() == cfg.repetitions;
    const double med = complete ? median(errors) : NAN;
    report(3, complete && med <= kRobustMedian && secs < kCrit3Seconds,
           format("T_max=%.0f median error %.3g (need <= %.0e) %.1fs", cfg.t_max[0], med, kRobustMedian, secs));
}

void criterion4() {
    auto cfg = tfim_config();
    cfg.alpha_source = AlphaSource::exact;
    const auto start = Clock::now();
    const auto result = run_experiment(cfg);
    const double secs = seconds_since(start);
    auto curves = mean_errors(result);
    const auto& qpe = curves["qpe"];
    const double t_lo = qpe.begin()->first, t_hi = qpe.rbegin()->first;
    const bool a = qpe.at(t_hi) * kQpePlateau >= qpe.at(t_lo);
    const double s_rpe = loglog_slope(curves["rpe"]), s_qcels = loglog_slope(curves["qcels"]);
    const bool b = s_rpe >= kSlopeLo && s_rpe <= kSlopeHi && s_qcels >= kSlopeLo && s_qcels <= kSlopeHi;
    const double robust = curves["robust_qcels"].at(t_hi);
    const double best_baseline = std::min(curves["rpe"].at(t_hi), curves["qcels"].at(t_hi));
    const bool c = robust * kRobustAdvantage <= best_baseline;
    std::size_t failed = 0;
    for (const auto& r : result.rows) failed += r.ok() ? 0 : 1;
    report(4, a && b && c && failed == 0 && secs < kCrit4Seconds,
           format("(a) qpe %.3g -> %.3g %s; (b) slopes rpe %.2f qcels %.2f %s; (c) robust %.3g vs baselines "
                  "%.3g (x%.2f) %s; failed rows %zu; %.0fs",
                  qpe.at(t_lo), qpe.at(t_hi), a ? "ok" : "bad", s_rpe, s_qcels, b ? "ok" : "bad", robust,
                  best_baseline, best_baseline / robust, c ? "ok" : "bad", failed, secs));
}

void criterion5() {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    double worst = 0.0;
    for (int d = 0; d < 100; ++d) {
        Dataset data;
        const std::size_t n = 50 + static_cast<std::size_t>(d) * 7;
        for (std::size_t k = 0; k < n; ++k) {
            data.times.push_back(6.0 * u(rng));
            data.values.push_back(Complex(u(rng), u(rng)));
        }
        const double alpha_hat = 0.5 * (1.0 + u(rng)) * 0.4;
        double weighted = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            weighted += std::norm(std::exp(alpha_hat * std::abs(data.times[k])) * data.values[k]);
        }
        weighted /= static_cast<double>(n);
        for (int j = 0; j < 100; ++j) {
            const double theta = M_PI * u(rng);
            const Complex g = objective_G(data, alpha_hat, theta);
            const double lhs = robust_loss(data, alpha_hat, g, theta);
            worst = std::max(worst, std::abs(lhs - (weighted - std::norm(g))));
        }
    }
    report(5, worst <= kIdentityTol, format("max deviation %.2e over 100x100 (need <= %.0e)", worst, kIdentityTol));
}

void criterion6() {
    const SpectralModel single({-0.6}, {1.0});
    const auto tfim = make_model(build_tfim(4, 1.0), StateVector::plus_state(4));
    double worst_single = 0.0, worst_spread = 0.0;
    for (double time : {0.5, 3.0, 17.0}) {
        std::vector<double> thetas;
        for (double alpha : {0.0, 0.1, 1.0}) {
            const GlobalDepolarizing noise(alpha);
            worst_single = std::max(
                worst_single,
                std::abs(rpe(single, noise, time, ShotBudget::exact(), -0.6, 1).theta_star + 0.6));
            thetas.push_back(rpe(tfim, noise, time, ShotBudget::exact(), tfim.ground_energy(), 1).theta_star);
        }
        const auto [lo, hi] = std::minmax_element(thetas.begin(), thetas.end());
        worst_spread = std::max(worst_spread, *hi - *lo);
    }
    report(6, worst_single <= kRpeTol && worst_spread <= kRpeTol,
           format("single-eigenstate error %.2e, TFIM spread over alpha %.2e (need <= %.0e)", worst_single,
                  worst_spread, kRpeTol));
}

// Large-T limit of the baseline's normal equations: the Gaussian time density
// is flat on the decay scale, so sum_j p_j E[exp(-(alpha+d)|t|) exp(i(theta-l_j)t)]
// is a Lorentzian mixture and the induced objective is d * F(d, theta)^2.
double floor_oracle(const std::vector<double>& p, const std::vector<double>& lam, double alpha, double d_max) {
    double best = -1.0, arg = 0.0;
    const int nd = 2000, nt = 20000;
    for (int i = 1; i <= nd; ++i) {
        const double d = d_max * i / nd;
        const double c = alpha + d;
        for (int j = 0; j <= nt; ++j) {
            const double theta = lam.front() - 0.25 + 0.5 * j / nt;
            double f = 0.0;
            for (std::size_t m = 0; m < p.size(); ++m) {
                const double w = theta - lam[m];
                f += p[m] * 2.0 * c / (c * c + w * w);
            }
            const double v = d * f * f;
            if (v > best) {
                best = v;
                arg = theta;
            }
        }
    }
    return arg - lam.front();
}

void criterion7() {
    const std::vector<double> p{0.8, 0.2}, lam{-1.0, -0.75};
    const double alpha = 0.25;
    const SpectralModel model(lam, p);
    const auto opts = QcelsOptions::for_alpha_guess(alpha);
    const double oracle = floor_oracle(p, lam, alpha, opts.decay_max);
    std::vector<double> errors;
    bool within = true;
    for (double t : {20.0, 40.0, 80.0}) {
        const auto data =
            generate_dataset(model, GlobalDepolarizing(alpha), TimeDistribution(t, 2.6), 10000, ShotBudget::exact(), 70);
        const double err = std::abs(qcels_baseline(data, opts).theta_star - lam[0]);
        errors.push_back(err);
        within = within && std::abs(err - std::abs(oracle)) <= kFloorRel * std::abs(oracle);
    }
    const double later_min = std::min(errors[1], errors[2]);
    const bool flat = later_min >= kFloorMonotone * errors[0];
    report(7, within && flat,
           format("oracle %.4g; errors T=20,40,80: %.4g %.4g %.4g (within %.0f%%: %s, non-decreasing: %s)", oracle,
                  errors[0], errors[1], errors[2], 100 * kFloorRel, within ? "yes" : "no", flat ? "yes" : "no"));
}

void criterion8() {
    const auto spec = normalized_tfim_trotter(4, 1.0, 0.01);
    double worst = 0.0;
    for (int k = 1; k <= 40; ++k) {
        const double t = 0.5 * k;
        const double b = run_benchmark_circuit(spec, t, LocalNoiseSpec::noiseless(), InitialState::plus(4));
        worst = std::max(worst, 1.0 - b);
    }
    report(8, worst <= kTrotterBound, format("max 1-B(t) for t<=20: %.3e (bound %.3e)", worst, kTrotterBound));
}

void criterion9() {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> ua(0.0, 1.0), ut(0.05, 20.0);
    const auto spec = normalized_tfim_trotter(4, 1.0, 0.01);
    double worst = 0.0, worst_floor = 0.0;
    int constraint_violations = 0, above = 0;
    for (int k = 0; k < 1000; ++k) {
        const double alpha = ua(rng), t = ut(rng);
        const auto counts =
            hadamard_test_circuit(compile_controlled_evolution(spec, t), InitialState::plus(4), PhaseGate::identity)
                .counts();
        const auto a = static_cast<double>(counts.single), b = static_cast<double>(counts.two);
        const auto f = solve_fidelity_params(alpha, t, counts.single, counts.two);
        if (1.0 - f.eta2 != 10.0 * (1.0 - f.eta1)) ++constraint_violations;
        const double prod = std::pow(f.eta1, a) * std::pow(f.eta2, b);
        const double r = std::abs(std::exp(-alpha * t) - prod);
        if (r > kFidelityTol) ++above;
        worst = std::max(worst, r);
        worst_floor = std::max(worst_floor, prod * (a + 10.0 * b) * std::ldexp(1.0, -54));
    }
    report(9, worst <= kFidelityTol && constraint_violations == 0,
           format("max residual %.2e (need <= %.0e), %d/1000 above, constraint violations %d, "
                  "double-precision grid floor up to %.2e",
                  worst, kFidelityTol, above, constraint_violations, worst_floor));
}

void criterion10() {
    auto cfg = tfim_config();
    cfg.alphas = {0.125};
    cfg.t_max = {8.0};
    cfg.methods = {Method::robust_qcels};
    cfg.reshuffle = false;
    const auto start = Clock::now();
    const auto global = run_experiment(cfg);
    cfg.noise_model = NoiseModel::local;
    cfg.noise_family = NoiseFamily::depolarizing;
    const auto local = run_experiment(cfg);
    const double secs = seconds_since(start);
    const auto ge = global.aggregate().front(), le = local.aggregate().front();
    const bool ok = ge.failures == 0 && le.failures == 0 && le.mean_error <= kLocalRatio * ge.mean_error &&
                    secs < kCrit10Seconds;
    report(10, ok,
           format("local %.3g vs global %.3g (ratio %.2f, need <= %.0f) %.0fs", le.mean_error, ge.mean_error,
                  le.mean_error / ge.mean_error, kLocalRatio, secs));
}

void criterion11() {
    const double tau = 0.01;
    const auto trot = normalized_tfim_trotter(4, 1.0, tau);
    // Per-gate rotation of one controlled Trotter step (tau/2 of the normalized Hamiltonian).
    const double gate_step = 0.5 * trot.gate_step();
    const double ratio = 0.05;
    const double gamma = ratio * gate_step;
    const auto model = make_model(build_tfim(4, 1.0), StateVector::plus_state(4));
    const double lambda0 = model.ground_energy();

    CircuitExperiment ex;
    ex.trotter = trot;
    ex.noise = LocalNoiseSpec::coherent(gamma, gamma);
    ex.init = InitialState::plus(4);
    const auto data = generate_circuit_dataset(ex, TimeDistribution(20.0, 2.6), 10000, ShotBudget::exact(), 11);
    const double estimate = robust_qcels(data, 0.0).theta_star;
    const double shift = estimate - lambda0;
    const double predicted = lambda0 * (effective_hamiltonian_factor(gamma, gate_step) - 1.0);
    const bool shift_ok = std::abs(shift - predicted) <= kShiftRel * std::abs(predicted);

    std::vector<double> times{5.0, 10.0, 20.0};
    const auto bench = circuit_benchmark_means(ex, times, Exec::parallel);
    double worst = 0.0;
    for (std::size_t k = 0; k < times.size(); ++k) {
        double want = 0.0;
        for (std::size_t m = 0; m < model.size(); ++m) {
            want += model.overlaps()[m] * std::cos(times[k] * gamma * model.eigenvalues()[m] / gate_step);
        }
        worst = std::max(worst, std::abs(bench[k] - want) / std::abs(want));
    }
    const bool bench_ok = worst <= kBenchRel;
    report(11, shift_ok && bench_ok,
           format("gamma/tau=%.2f shift %.4g vs %.4g (%.1f%%, need <= %.0f%%); benchmark max rel dev %.2f%% "
                  "(need <= %.0f%%)",
                  ratio, shift, predicted, 100 * std::abs(shift - predicted) / std::abs(predicted), 100 * kShiftRel,
                  100 * worst, 100 * kBenchRel));
}

void criterion12() {
    ExperimentConfig cfg;
    cfg.num_sites = 3;
    cfg.alphas = {0.25, 0.5};
    cfg.t_max = {2.0, 6.0};
    cfg.n_t = 1000;
    cfg.n_s1 = 1000;
    cfg.n_s2 = 100;
    cfg.n_rpe = 10000;
    cfg.repetitions = 3;
    cfg.seed = 12;
    auto render = [](const SweepResult& r) {
        std::ostringstream os;
        write_sweep_csv(os, r);
        write_aggregate_csv(os, r);
        return os.str();
    };
    const std::string a = render(run_experiment(cfg));
    const std::string b = render(run_experiment(cfg));
    cfg.threads = 1;
    const std::string c = render(run_experiment(cfg));
    cfg.threads = 0;
    set_kernel_threads(0);
    cfg.noise_model = NoiseModel::local;
    cfg.methods = {Method::robust_qcels, Method::rpe};
    cfg.repetitions = 1;
    const std::string d = render(run_experiment(cfg));
    const std::string e = render(run_experiment(cfg));
    report(12, a == b && a == c && d == e,
           format("global repeat %s, thread count %s, local repeat %s", a == b ? "identical" : "differs",
                  a == c ? "identical" : "differs", d == e ? "identical" : "differs"));
}

}  // namespace

int main() {
    guarded(1, criterion1);
    guarded(2, criterion2);
    guarded(3, criterion3);
    guarded(4, criterion4);
    guarded(5, criterion5);
    guarded(6, criterion6);
    guarded(7, criterion7);
    guarded(8, criterion8);
    guarded(9, criterion9);
    guarded(10, criterion10);
    guarded(11, criterion11);
    guarded(12, criterion12);
    std::printf("%d criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
