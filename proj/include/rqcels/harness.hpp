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

#ifndef RQCELS_HARNESS_HPP
#define RQCELS_HARNESS_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "rqcels/alpha_fit.hpp"
#include "rqcels/config.hpp"

namespace rqcels {

struct SweepRow {
    std::string method;
    double t_max = 0.0;
    double alpha = 0.0;
    std::string noise;  // "global" or the local family name
    std::size_t repetition = 0;
    double estimate = 0.0;
    double error = 0.0;
    double alpha_hat = 0.0;
    std::string status = "ok";  // "ok" or "failed: <reason>"
    double wall_time = 0.0;     // seconds; only written by the timing CSV

    bool ok() const { return status == "ok"; }
    bool operator==(const SweepRow&) const = default;
};

struct AggregateRow {
    std::string method;
    double t_max = 0.0;
    double alpha = 0.0;
    std::string noise;
    double mean_error = 0.0;
    std::size_t count = 0;
    std::size_t failures = 0;
};

struct SweepResult {
    std::vector<SweepRow> rows;

    /// Mean error per (method, T_max, alpha, noise) over successful rows, in
    /// first-appearance order.
    std::vector<AggregateRow> aggregate() const;
};

SweepResult run_experiment(const ExperimentConfig& config);

/// Local-noise spec calibrated so the Hadamard-test circuit at the reference
/// time has total fidelity exp(-alpha t_ref).
LocalNoiseSpec calibrate_for_config(const ExperimentConfig& config, const TrotterSpec& trotter, double alpha);

/// Benchmark record behind the alpha estimate of one repetition; `circuit`
/// selects circuit-level benchmarks instead of the global model.
BenchmarkRecord calibration_record(const ExperimentConfig& config, double alpha, Seed seed,
                                   const CircuitExperiment* circuit = nullptr);

/// Columns method,t_max,alpha,noise,repetition,estimate,error,alpha_hat,status[,wall_time].
void write_sweep_csv(std::ostream& out, const SweepResult& result, bool with_timing = false);
SweepResult read_sweep_csv(std::istream& in);
void write_aggregate_csv(std::ostream& out, const SweepResult& result);
/// Log-log error against T_max, one polyline per (method, alpha, noise),
/// dashed verticals at 1/alpha and 2/alpha.
void write_svg(std::ostream& out, const SweepResult& result, const std::vector<double>& alphas);

void emit_csv(const SweepResult& result, const std::string& path, bool with_timing = false);
void emit_svg(const SweepResult& result, const std::string& path, const std::vector<double>& alphas);

}  // namespace rqcels

#endif  // RQCELS_HARNESS_HPP
