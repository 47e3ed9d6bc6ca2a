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

// rqcels command line: sweep, calibrate, landscape, simulate-circuit.

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "rqcels/errors.hpp"
#include "rqcels/harness.hpp"

namespace fs = std::filesystem;
using namespace rqcels;

namespace {

struct CommonArgs {
    std::string config_path;
    // Every config key mirrored as --key (and --dashed-key); filled only when given.
    std::map<std::string, std::string> overrides;
    std::vector<std::pair<std::string, CLI::Option*>> options;
};

std::string dashed(std::string s) {
    std::replace(s.begin(), s.end(), '_', '-');
    return s;
}

void add_common(CLI::App* app, CommonArgs& args) {
    app->add_option("--config", args.config_path, "Key/value config file")->check(CLI::ExistingFile);
    for (const auto& key : config_keys()) {
        std::string names = "--" + key;
        if (dashed(key) != key) names += ",--" + dashed(key);
        CLI::Option* opt = nullptr;
        if (key == "exact_expectations" || key == "reshuffle") {
            opt = app->add_flag(names + "{true}", args.overrides[key], "Override '" + key + "'");
        } else {
            opt = app->add_option(names, args.overrides[key], "Override '" + key + "'");
        }
        args.options.emplace_back(key, opt);
    }
}

ExperimentConfig resolve(const CommonArgs& args) {
    ExperimentConfig cfg;
    if (!args.config_path.empty()) cfg = load_config(args.config_path);
    for (const auto& [key, opt] : args.options) {
        if (opt->count() > 0) cfg.set(key, args.overrides.at(key));
    }
    cfg.validate();
    if (cfg.threads > 0) set_kernel_threads(cfg.threads);
    fs::create_directories(cfg.out_dir);
    std::ofstream eff(fs::path(cfg.out_dir) / "config.ini");
    if (!eff) throw IoError("cannot write '" + (fs::path(cfg.out_dir) / "config.ini").string() + "'");
    cfg.write(eff);
    return cfg;
}

std::ofstream open_out(const fs::path& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    return out;
}

std::string fmt(double x) {
    std::ostringstream os;
    os << std::setprecision(17) << x;
    return os.str();
}

std::optional<CircuitExperiment> local_experiment(const ExperimentConfig& cfg, double alpha) {
    if (cfg.noise_model != NoiseModel::local) return std::nullopt;
    CircuitExperiment ex;
    ex.trotter = normalized_tfim_trotter(cfg.num_sites, cfg.g, cfg.tau);
    ex.noise = calibrate_for_config(cfg, ex.trotter, alpha);
    ex.init = InitialState::plus(cfg.num_sites);
    ex.twirl_instances = cfg.twirl_instances;
    ex.twirl_seed = derive_seed(cfg.seed, {stream::kTwirl});
    return ex;
}

int run_sweep(const CommonArgs& args) {
    const auto cfg = resolve(args);
    const auto result = run_experiment(cfg);
    const fs::path dir(cfg.out_dir);
    emit_csv(result, (dir / "sweep.csv").string());
    emit_csv(result, (dir / "sweep_timing.csv").string(), true);
    {
        auto out = open_out(dir / "sweep_aggregate.csv");
        write_aggregate_csv(out, result);
    }
    emit_svg(result, (dir / "sweep.svg").string(), cfg.alphas);
    std::size_t failed = 0;
    for (const auto& r : result.rows) failed += r.ok() ? 0 : 1;
    std::cout << "rows " << result.rows.size() << ", failed " << failed << ", written to " << dir.string() << '\n';
    write_aggregate_csv(std::cout, result);
    return 0;
}

int run_calibrate(const CommonArgs& args) {
    const auto cfg = resolve(args);
    const fs::path dir(cfg.out_dir);
    auto summary = open_out(dir / "calibrate.csv");
    summary << "alpha,alpha_hat,intercept,kappa,n_used,n_discarded,residual_rms,eta1,eta2,gamma1,gamma2\n";
    for (std::size_t a = 0; a < cfg.alphas.size(); ++a) {
        const double alpha = cfg.alphas[a];
        const auto circuit = local_experiment(cfg, alpha);
        const auto record =
            calibration_record(cfg, alpha, derive_seed(cfg.seed, {a, stream::kBenchmark}), circuit ? &*circuit : nullptr);
        const auto fit = fit_alpha(record);
        auto report = open_out(dir / ("calibrate_alpha" + std::to_string(a) + ".csv"));
        report << "# alpha=" << fmt(alpha) << '\n';
        write_regression_report(report, record, fit);
        const LocalNoiseSpec spec = circuit ? circuit->noise : LocalNoiseSpec::noiseless();
        summary << fmt(alpha) << ',' << fmt(fit.alpha_hat) << ',' << fmt(fit.intercept) << ',' << fmt(fit.kappa) << ','
                << fit.n_used << ',' << fit.n_discarded << ',' << fmt(fit.residual_rms) << ',' << fmt(spec.eta1) << ','
                << fmt(spec.eta2) << ',' << fmt(spec.gamma1) << ',' << fmt(spec.gamma2) << '\n';
        std::cout << "alpha " << alpha << " -> alpha_hat " << fit.alpha_hat << " (kappa " << fit.kappa << ")\n";
    }
    return 0;
}

struct LandscapeArgs {
    double t_max = 0.0;
    double half_width = 0.5;
    std::size_t points = 201;
    bool ideal = true;
};

int run_landscape(const CommonArgs& args, const LandscapeArgs& la) {
    const auto cfg = resolve(args);
    const double alpha = cfg.alphas.front();
    const auto grid = cfg.t_max_grid(alpha);
    const double t_max = la.t_max > 0.0 ? la.t_max : grid.back();
    const auto model = make_model(build_tfim(cfg.num_sites, cfg.g), StateVector::plus_state(cfg.num_sites));
    const auto circuit = local_experiment(cfg, alpha);

    double alpha_hat = alpha;
    if (cfg.alpha_source == AlphaSource::fit) {
        const auto record = calibration_record(cfg, alpha, derive_seed(cfg.seed, {0, stream::kBenchmark}),
                                               circuit ? &*circuit : nullptr);
        alpha_hat = fit_alpha(record).alpha_hat;
    }
    const TimeDistribution dist(t_max / cfg.gamma, cfg.gamma);
    const ShotBudget shots = cfg.exact_expectations ? ShotBudget::exact() : ShotBudget(cfg.n_s2);
    const Seed seed = derive_seed(cfg.seed, {stream::kTimes});
    const Dataset data = circuit ? generate_circuit_dataset(*circuit, dist, cfg.n_t, shots, seed)
                                 : generate_dataset(model, GlobalDepolarizing(alpha), dist, cfg.n_t, shots, seed);
    const auto fit = robust_qcels(data, alpha_hat);
    const double lambda0 = model.ground_energy();
    const auto thetas = linear_grid(lambda0 - la.half_width, lambda0 + la.half_width, la.points);

    Metadata meta{{"alpha", fmt(alpha)},
                  {"alpha_hat", fmt(alpha_hat)},
                  {"t_max", fmt(t_max)},
                  {"theta_star", fmt(fit.theta_star)},
                  {"lambda0", fmt(lambda0)},
                  {"seed", std::to_string(cfg.seed)}};
    const fs::path dir(cfg.out_dir);
    {
        auto out = open_out(dir / "landscape_empirical.csv");
        write_landscape_csv(out, dump_landscape(EmpiricalLandscape{data, alpha_hat, fit.r_star}, thetas), meta);
    }
    if (la.ideal) {
        auto out = open_out(dir / "landscape_ideal.csv");
        write_landscape_csv(out, dump_landscape(IdealLandscape{model, alpha, alpha_hat, dist, fit.r_star}, thetas),
                            meta);
    }
    std::cout << "theta_star " << std::setprecision(10) << fit.theta_star << ", lambda0 " << lambda0 << ", error "
              << std::abs(fit.theta_star - lambda0) << '\n';
    return 0;
}

struct SimulateArgs {
    double t = 1.0;
    std::string part = "re";
    bool benchmark = false;
};

int run_simulate(const CommonArgs& args, const SimulateArgs& sa) {
    auto cfg = resolve(args);
    const double alpha = cfg.alphas.front();
    const TrotterSpec trotter = normalized_tfim_trotter(cfg.num_sites, cfg.g, cfg.tau);
    const LocalNoiseSpec spec = calibrate_for_config(cfg, trotter, alpha);
    const InitialState init = InitialState::plus(cfg.num_sites);
    if (sa.part != "re" && sa.part != "im") throw ValidationError("--part must be 're' or 'im'");

    double noisy = 0.0, ideal = 0.0, p0 = 0.0;
    Circuit evo;
    if (sa.benchmark) {
        evo = compile_benchmark_evolution(trotter, sa.t);
        noisy = run_benchmark_circuit(trotter, sa.t, spec, init, Exec::parallel);
        ideal = run_benchmark_circuit(trotter, sa.t, LocalNoiseSpec::noiseless(), init, Exec::parallel);
        p0 = 0.5 * (1.0 + noisy);
    } else {
        evo = compile_controlled_evolution(trotter, sa.t);
        const PhaseGate w = sa.part == "re" ? PhaseGate::identity : PhaseGate::s_dagger;
        const auto out = run_hadamard_test(evo, spec, init, w, Exec::parallel);
        noisy = out.expectation;
        p0 = out.p0;
        ideal = run_hadamard_test(evo, LocalNoiseSpec::noiseless(), init, w, Exec::parallel).expectation;
    }
    const auto counts = hadamard_test_circuit(evo, init, PhaseGate::identity).counts();
    auto out = open_out(fs::path(cfg.out_dir) / "simulate.csv");
    out << "t,part,circuit,family,eta1,eta2,gamma1,gamma2,n_g1,n_g2,p0,expectation,noiseless\n";
    out << fmt(snap_time(sa.t, cfg.tau)) << ',' << sa.part << ',' << (sa.benchmark ? "benchmark" : "hadamard") << ','
        << noise_family_name(spec.family) << ',' << fmt(spec.eta1) << ',' << fmt(spec.eta2) << ',' << fmt(spec.gamma1)
        << ',' << fmt(spec.gamma2) << ',' << counts.single << ',' << counts.two << ',' << fmt(p0) << ',' << fmt(noisy)
        << ',' << fmt(ideal) << '\n';
    std::cout << "expectation " << std::setprecision(10) << noisy << " (noiseless " << ideal << ")\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Noisy ground-state energy estimation"};
    app.require_subcommand(1);

    CommonArgs sweep_args, cal_args, land_args, sim_args;
    auto* sweep = app.add_subcommand("sweep", "Error against T_max for every configured method");
    add_common(sweep, sweep_args);

    auto* cal = app.add_subcommand("calibrate", "Benchmark regression for alpha");
    add_common(cal, cal_args);

    LandscapeArgs la;
    auto* land = app.add_subcommand("landscape", "Loss landscape around the ground energy");
    add_common(land, land_args);
    land->add_option("--landscape-t-max", la.t_max, "T_max of the dataset (default: largest grid point)");
    land->add_option("--half-width", la.half_width, "Theta half-width around the ground energy");
    land->add_option("--points", la.points, "Theta grid points")->check(CLI::Range(2, 1000000));
    land->add_flag("!--no-ideal", la.ideal, "Skip the quadrature landscape");

    SimulateArgs sa;
    auto* sim = app.add_subcommand("simulate-circuit", "One density-matrix Hadamard test");
    add_common(sim, sim_args);
    sim->add_option("--time", sa.t, "Evolution time");
    sim->add_option("--part", sa.part, "re or im");
    sim->add_flag("--benchmark", sa.benchmark, "Run the benchmark circuit instead");

    CLI11_PARSE(app, argc, argv);
    try {
        if (sweep->parsed()) return run_sweep(sweep_args);
        if (cal->parsed()) return run_calibrate(cal_args);
        if (land->parsed()) return run_landscape(land_args, la);
        if (sim->parsed()) return run_simulate(sim_args, sa);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
