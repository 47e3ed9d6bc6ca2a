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

#include "rqcels/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <tuple>

#include "rqcels/errors.hpp"

namespace rqcels {

namespace {

constexpr std::uint64_t kDataTag = 100;

struct Unit {
    std::optional<SpectralModel> model;
    double alpha_hat = 0.0;
    std::string failure;
};

struct Cell {
    std::size_t alpha_index;
    std::size_t repetition;
    std::size_t t_index;
    std::size_t method_index;
    double t_max;
};

bool consumes_alpha_hat(Method m) { return m == Method::robust_qcels || m == Method::qcels; }

std::string sanitize(std::string s) {
    std::replace(s.begin(), s.end(), ',', ';');
    std::replace(s.begin(), s.end(), '\n', ' ');
    return s;
}

std::string fmt(double x) {
    std::ostringstream os;
    os << std::setprecision(17) << x;
    return os.str();
}

ShotBudget shots_or_exact(const ExperimentConfig& c, long long n) {
    return c.exact_expectations ? ShotBudget::exact() : ShotBudget(n);
}

EstimateResult estimate_cell(const ExperimentConfig& cfg, const Cell& cell, const SpectralModel& model,
                             double alpha, double alpha_hat, const CircuitExperiment* circuit) {
    const Method method = cfg.methods[cell.method_index];
    const Seed cell_seed = derive_seed(cfg.seed, {cell.alpha_index, cell.repetition, cell.t_index, stream::kMethod,
                                                  cell.method_index});
    const Seed data_seed = derive_seed(cfg.seed, {cell.alpha_index, cell.repetition, cell.t_index, kDataTag});
    const GlobalDepolarizing noise(alpha);
    GridOptions grid;
    grid.exec = Exec::parallel;

    switch (method) {
        case Method::robust_qcels:
        case Method::qcels: {
            const TimeDistribution dist(cell.t_max / cfg.gamma, cfg.gamma);
            const auto shots = shots_or_exact(cfg, cfg.n_s2);
            const Dataset data =
                circuit ? generate_circuit_dataset(*circuit, dist, cfg.n_t, shots, data_seed, Exec::serial)
                        : generate_dataset(model, noise, dist, cfg.n_t, shots, data_seed, Exec::serial);
            if (method == Method::robust_qcels) return robust_qcels(data, alpha_hat, grid);
            auto opts = QcelsOptions::for_alpha_guess(alpha_hat > 0.0 ? alpha_hat : alpha);
            opts.grid = grid;
            return qcels_baseline(data, opts);
        }
        case Method::rpe: {
            const auto shots = shots_or_exact(cfg, cfg.n_rpe);
            if (!circuit) return rpe(model, noise, cell.t_max, shots, model.ground_energy(), cell_seed);
            const double tau = circuit->trotter.tau;
            const auto steps = static_cast<std::size_t>(std::max(1LL, std::llround(cell.t_max / tau)));
            const auto table = circuit_signal_table(*circuit, steps, +1, derive_seed(cell_seed, {stream::kTwirl}),
                                                    Exec::serial);
            return rpe_from_expectations(table[steps], static_cast<double>(steps) * tau, shots, model.ground_energy(),
                                         cell_seed);
        }
        case Method::qpe: {
            const int bits = cfg.qpe_bits > 0 ? cfg.qpe_bits : qpe_bits_for(cell.t_max);
            return qpe_sample(model, noise, bits, cfg.n_qpe, cell_seed);
        }
    }
    throw ValidationError("unknown method");
}

}  // namespace

std::vector<AggregateRow> SweepResult::aggregate() const {
    std::vector<AggregateRow> out;
    std::map<std::tuple<std::string, double, double, std::string>, std::size_t> index;
    std::vector<double> sums;
    for (const auto& r : rows) {
        const auto key = std::make_tuple(r.method, r.t_max, r.alpha, r.noise);
        auto it = index.find(key);
        if (it == index.end()) {
            it = index.emplace(key, out.size()).first;
            out.push_back({r.method, r.t_max, r.alpha, r.noise, 0.0, 0, 0});
            sums.push_back(0.0);
        }
        auto& a = out[it->second];
        if (r.ok()) {
            sums[it->second] += r.error;
            ++a.count;
        } else {
            ++a.failures;
        }
    }
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i].mean_error = out[i].count ? sums[i] / static_cast<double>(out[i].count) : std::nan("");
    }
    return out;
}

LocalNoiseSpec calibrate_for_config(const ExperimentConfig& cfg, const TrotterSpec& trotter, double alpha) {
    const double t_ref = cfg.calibration_time > 0.0 ? cfg.calibration_time : (alpha > 0.0 ? 1.0 / alpha : 1.0);
    const Circuit evo = compile_controlled_evolution(trotter, t_ref);
    const Circuit full = hadamard_test_circuit(evo, InitialState::plus(trotter.num_sites), PhaseGate::identity);
    return calibrate_local_noise(cfg.noise_family, alpha, snap_time(t_ref, trotter.tau), full.counts());
}

BenchmarkRecord calibration_record(const ExperimentConfig& cfg, double alpha, Seed seed,
                                   const CircuitExperiment* circuit) {
    const auto times = default_benchmark_times(alpha, cfg.n_b);
    std::vector<double> means(times.size());
    if (circuit) {
        means = circuit_benchmark_means(*circuit, times, Exec::serial);
    } else {
        const GlobalDepolarizing noise(alpha);
        for (std::size_t n = 0; n < times.size(); ++n) means[n] = benchmark_expectation(noise, times[n]);
    }
    return sample_benchmarks(times, means, shots_or_exact(cfg, cfg.n_s1), seed);
}

SweepResult run_experiment(const ExperimentConfig& cfg) {
    cfg.validate();
    if (cfg.threads > 0) set_kernel_threads(cfg.threads);

    const SpectralModel base = make_model(build_tfim(cfg.num_sites, cfg.g), StateVector::plus_state(cfg.num_sites));
    const bool local = cfg.noise_model == NoiseModel::local;
    TrotterSpec trotter;
    trotter.num_sites = cfg.num_sites;
    trotter.g = cfg.g;
    trotter.tau = cfg.tau;
    trotter.scale = base.scale();

    std::string noise_label = "global";
    if (local) {
        noise_label = std::string(noise_family_name(cfg.noise_family));
        if (cfg.twirl_instances > 0) noise_label += "_twirled";
    }

    // Local specs per alpha; a failed calibration marks every row of that alpha.
    std::vector<std::optional<CircuitExperiment>> circuits(cfg.alphas.size());
    std::vector<std::string> alpha_failure(cfg.alphas.size());
    if (local) {
        for (std::size_t a = 0; a < cfg.alphas.size(); ++a) {
            try {
                CircuitExperiment ex;
                ex.trotter = trotter;
                ex.noise = calibrate_for_config(cfg, trotter, cfg.alphas[a]);
                ex.init = InitialState::plus(cfg.num_sites);
                ex.twirl_instances = cfg.twirl_instances;
                ex.twirl_seed = derive_seed(cfg.seed, {a, stream::kTwirl});
                circuits[a] = ex;
            } catch (const std::exception& e) {
                alpha_failure[a] = e.what();
            }
        }
    }

    const bool need_fit = cfg.alpha_source == AlphaSource::fit &&
                          std::any_of(cfg.methods.begin(), cfg.methods.end(), consumes_alpha_hat);
    const std::size_t reps = cfg.repetitions;
    std::vector<Unit> units(cfg.alphas.size() * reps);
    const auto n_units = static_cast<std::ptrdiff_t>(units.size());
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t u = 0; u < n_units; ++u) {
        const auto a = static_cast<std::size_t>(u) / reps;
        const auto rep = static_cast<std::size_t>(u) % reps;
        Unit& unit = units[static_cast<std::size_t>(u)];
        const double alpha = cfg.alphas[a];
        try {
            if (!alpha_failure[a].empty()) throw InfeasibleError(alpha_failure[a]);
            const Seed s = derive_seed(cfg.seed, {a, rep});
            unit.model = (cfg.reshuffle && !local) ? reshuffle_overlaps(base, derive_seed(s, {stream::kReshuffle}))
                                                   : base;
            unit.alpha_hat = alpha;
            if (need_fit) {
                const auto* circuit = circuits[a] ? &*circuits[a] : nullptr;
                const auto record = calibration_record(cfg, alpha, derive_seed(s, {stream::kBenchmark}), circuit);
                unit.alpha_hat = fit_alpha(record).alpha_hat;
            }
        } catch (const std::exception& e) {
            unit.failure = e.what();
        }
    }

    std::vector<Cell> cells;
    for (std::size_t a = 0; a < cfg.alphas.size(); ++a) {
        const auto grid = cfg.t_max_grid(cfg.alphas[a]);
        for (std::size_t rep = 0; rep < reps; ++rep)
            for (std::size_t ti = 0; ti < grid.size(); ++ti)
                for (std::size_t mi = 0; mi < cfg.methods.size(); ++mi) cells.push_back({a, rep, ti, mi, grid[ti]});
    }

    SweepResult result;
    result.rows.resize(cells.size());
    const auto n_cells = static_cast<std::ptrdiff_t>(cells.size());
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t c = 0; c < n_cells; ++c) {
        const Cell& cell = cells[static_cast<std::size_t>(c)];
        const Unit& unit = units[cell.alpha_index * reps + cell.repetition];
        SweepRow& row = result.rows[static_cast<std::size_t>(c)];
        row.method = std::string(method_name(cfg.methods[cell.method_index]));
        row.t_max = cell.t_max;
        row.alpha = cfg.alphas[cell.alpha_index];
        row.noise = noise_label;
        row.repetition = cell.repetition;
        row.alpha_hat = unit.alpha_hat;
        const auto start = std::chrono::steady_clock::now();
        try {
            if (!unit.failure.empty()) throw EstimationError(unit.failure);
            const auto* circuit = circuits[cell.alpha_index] ? &*circuits[cell.alpha_index] : nullptr;
            const auto est = estimate_cell(cfg, cell, *unit.model, row.alpha, unit.alpha_hat, circuit);
            row.estimate = est.theta_star;
            row.error = std::abs(est.theta_star - base.ground_energy());
            if (!std::isfinite(row.error)) throw EstimationError("non-finite estimate");
        } catch (const std::exception& e) {
            row.estimate = std::nan("");
            row.error = std::nan("");
            row.status = "failed: " + sanitize(e.what());
        }
        row.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
    return result;
}

void write_sweep_csv(std::ostream& out, const SweepResult& result, bool with_timing) {
    out << "method,t_max,alpha,noise,repetition,estimate,error,alpha_hat,status";
    if (with_timing) out << ",wall_time";
    out << '\n';
    for (const auto& r : result.rows) {
        out << r.method << ',' << fmt(r.t_max) << ',' << fmt(r.alpha) << ',' << r.noise << ',' << r.repetition << ','
            << fmt(r.estimate) << ',' << fmt(r.error) << ',' << fmt(r.alpha_hat) << ',' << sanitize(r.status);
        if (with_timing) out << ',' << fmt(r.wall_time);
        out << '\n';
    }
}

SweepResult read_sweep_csv(std::istream& in) {
    SweepResult result;
    std::string line;
    if (!std::getline(in, line)) throw IoError("sweep CSV is empty");
    const bool timing = line.find(",wall_time") != std::string::npos;
    const std::size_t expected = timing ? 10 : 9;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> f;
        std::stringstream ss(line);
        std::string item;
        while (std::getline(ss, item, ',')) f.push_back(item);
        if (f.size() != expected) throw IoError("malformed sweep row '" + line + "'");
        SweepRow r;
        try {
            r.method = f[0];
            r.t_max = std::stod(f[1]);
            r.alpha = std::stod(f[2]);
            r.noise = f[3];
            r.repetition = std::stoull(f[4]);
            r.estimate = std::stod(f[5]);
            r.error = std::stod(f[6]);
            r.alpha_hat = std::stod(f[7]);
            r.status = f[8];
            if (timing) r.wall_time = std::stod(f[9]);
        } catch (const std::exception&) {
            throw IoError("unparsable sweep row '" + line + "'");
        }
        result.rows.push_back(r);
    }
    return result;
}

void write_aggregate_csv(std::ostream& out, const SweepResult& result) {
    out << "method,t_max,alpha,noise,mean_error,count,failures\n";
    for (const auto& a : result.aggregate()) {
        out << a.method << ',' << fmt(a.t_max) << ',' << fmt(a.alpha) << ',' << a.noise << ',' << fmt(a.mean_error)
            << ',' << a.count << ',' << a.failures << '\n';
    }
}

void write_svg(std::ostream& out, const SweepResult& result, const std::vector<double>& alphas) {
    const double width = 640, height = 420, left = 70, right = 170, top = 30, bottom = 50;
    const double pw = width - left - right, ph = height - top - bottom;
    const auto agg = result.aggregate();

    double x_lo = INFINITY, x_hi = -INFINITY, y_lo = INFINITY, y_hi = -INFINITY;
    for (const auto& a : agg) {
        if (!(a.t_max > 0.0)) continue;
        x_lo = std::min(x_lo, a.t_max);
        x_hi = std::max(x_hi, a.t_max);
        if (a.count > 0 && a.mean_error > 0.0) {
            y_lo = std::min(y_lo, a.mean_error);
            y_hi = std::max(y_hi, a.mean_error);
        }
    }
    for (double al : alphas) {
        if (al > 0.0 && std::isfinite(x_lo)) {
            x_lo = std::min(x_lo, 1.0 / al);
            x_hi = std::max(x_hi, 2.0 / al);
        }
    }
    if (!std::isfinite(x_lo)) {
        x_lo = 1.0;
        x_hi = 10.0;
    }
    if (!std::isfinite(y_lo)) {
        y_lo = 1e-4;
        y_hi = 1.0;
    }
    x_lo = std::pow(10.0, std::floor(std::log10(x_lo)));
    x_hi = std::pow(10.0, std::ceil(std::log10(x_hi)));
    y_lo = std::pow(10.0, std::floor(std::log10(y_lo)));
    y_hi = std::pow(10.0, std::ceil(std::log10(y_hi)));
    if (x_hi <= x_lo) x_hi = 10.0 * x_lo;
    if (y_hi <= y_lo) y_hi = 10.0 * y_lo;

    auto px = [&](double x) { return left + pw * (std::log10(x) - std::log10(x_lo)) / (std::log10(x_hi) - std::log10(x_lo)); };
    auto py = [&](double y) { return top + ph * (std::log10(y_hi) - std::log10(y)) / (std::log10(y_hi) - std::log10(y_lo)); };

    out << std::fixed << std::setprecision(2);
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height << "\">\n";
    out << "<rect x=\"0\" y=\"0\" width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n";
    out << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << pw << "\" height=\"" << ph
        << "\" fill=\"none\" stroke=\"black\"/>\n";
    for (double d = x_lo; d <= x_hi * 1.0001; d *= 10.0) {
        out << "<text x=\"" << px(d) << "\" y=\"" << top + ph + 18 << "\" font-size=\"11\" text-anchor=\"middle\">"
            << std::defaultfloat << d << std::fixed << "</text>\n";
    }
    for (double d = y_lo; d <= y_hi * 1.0001; d *= 10.0) {
        out << "<text x=\"" << left - 6 << "\" y=\"" << py(d) + 4 << "\" font-size=\"11\" text-anchor=\"end\">"
            << std::defaultfloat << d << std::fixed << "</text>\n";
    }
    out << "<text x=\"" << left + pw / 2 << "\" y=\"" << height - 12
        << "\" font-size=\"13\" text-anchor=\"middle\">T_max</text>\n";
    out << "<text x=\"16\" y=\"" << top + ph / 2 << "\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
        << top + ph / 2 << ")\">mean |error|</text>\n";
    for (double al : alphas) {
        if (!(al > 0.0)) continue;
        for (double x : {1.0 / al, 2.0 / al}) {
            if (x < x_lo || x > x_hi) continue;
            out << "<line x1=\"" << px(x) << "\" y1=\"" << top << "\" x2=\"" << px(x) << "\" y2=\"" << top + ph
                << "\" stroke=\"gray\" stroke-dasharray=\"4 3\"/>\n";
        }
    }

    static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};
    std::vector<std::tuple<std::string, double, std::string>> series;
    for (const auto& a : agg) {
        const auto key = std::make_tuple(a.method, a.alpha, a.noise);
        if (std::find(series.begin(), series.end(), key) == series.end()) series.push_back(key);
    }
    for (std::size_t s = 0; s < series.size(); ++s) {
        const char* color = palette[s % 8];
        std::string points;
        std::ostringstream pts;
        pts << std::fixed << std::setprecision(2);
        for (const auto& a : agg) {
            if (std::make_tuple(a.method, a.alpha, a.noise) != series[s]) continue;
            if (!(a.count > 0 && a.mean_error > 0.0 && a.t_max > 0.0)) continue;
            pts << px(a.t_max) << ',' << py(a.mean_error) << ' ';
            out << "<circle cx=\"" << px(a.t_max) << "\" cy=\"" << py(a.mean_error) << "\" r=\"3\" fill=\"" << color
                << "\"/>\n";
        }
        points = pts.str();
        if (!points.empty()) {
            out << "<polyline points=\"" << points << "\" fill=\"none\" stroke=\"" << color << "\"/>\n";
        }
        const double ly = top + 14.0 + 16.0 * static_cast<double>(s);
        out << "<line x1=\"" << left + pw + 10 << "\" y1=\"" << ly << "\" x2=\"" << left + pw + 30 << "\" y2=\"" << ly
            << "\" stroke=\"" << color << "\"/>\n";
        out << "<text x=\"" << left + pw + 34 << "\" y=\"" << ly + 4 << "\" font-size=\"11\">" << std::get<0>(series[s])
            << " a=" << std::defaultfloat << std::get<1>(series[s]) << std::fixed << "</text>\n";
    }
    out << "</svg>\n";
}

void emit_csv(const SweepResult& result, const std::string& path, bool with_timing) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    write_sweep_csv(out, result, with_timing);
    if (!out) throw IoError("failed writing '" + path + "'");
}

void emit_svg(const SweepResult& result, const std::string& path, const std::vector<double>& alphas) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    write_svg(out, result, alphas);
    if (!out) throw IoError("failed writing '" + path + "'");
}

}  // namespace rqcels
