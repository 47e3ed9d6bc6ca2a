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

#ifndef RQCELS_CONFIG_HPP
#define RQCELS_CONFIG_HPP

#include <cstddef>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "rqcels/circuit.hpp"
#include "rqcels/estimators.hpp"

namespace rqcels {

/// Ordered key/value pairs. Section headers `[name]` only group keys; a key
/// may also be written `section.key`.
using KeyValues = std::vector<std::pair<std::string, std::string>>;

KeyValues parse_key_values(std::istream& in);
KeyValues load_key_values(const std::string& path);

enum class NoiseModel { global, local };
enum class AlphaSource { fit, exact };

struct ExperimentConfig {
    // [model]
    int num_sites = 4;
    double g = 1.0;
    std::string initial_state = "plus";
    // [noise]
    NoiseModel noise_model = NoiseModel::global;
    NoiseFamily noise_family = NoiseFamily::depolarizing;
    std::vector<double> alphas{0.25};
    double tau = 0.01;
    std::size_t twirl_instances = 0;
    /// Reference time of local-noise calibration; 0 selects 1/alpha.
    double calibration_time = 0.0;
    // [methods]
    std::vector<Method> methods{Method::robust_qcels, Method::qcels, Method::rpe, Method::qpe};
    // [sweep]
    /// Empty selects default_t_max_grid(alpha, t_max_points) per alpha.
    std::vector<double> t_max;
    std::size_t t_max_points = 7;
    // [budget]
    std::size_t n_t = 10000;
    long long n_s1 = 10000;
    long long n_s2 = 500;
    std::size_t n_b = 10;
    long long n_rpe = 1000000;
    std::size_t n_qpe = 15;
    /// QPE ancilla bits; 0 maps each T_max to round(log2(2 T_max)).
    int qpe_bits = 0;
    double gamma = 2.6;
    // [run]
    std::size_t repetitions = 10;
    Seed seed = 1;
    bool exact_expectations = false;
    AlphaSource alpha_source = AlphaSource::fit;
    bool reshuffle = true;
    std::string out_dir = "out";
    int threads = 0;

    /// Sets one key; throws ValidationError for unknown keys or bad values.
    void set(const std::string& key, const std::string& value);
    void apply(const KeyValues& kv);
    void validate() const;
    /// Sections and keys in the same format parse_key_values reads.
    void write(std::ostream& out) const;

    std::vector<double> t_max_grid(double alpha) const;
};

ExperimentConfig load_config(const std::string& path);

/// Every configurable key, for flag mirroring.
const std::vector<std::string>& config_keys();

/// Geometric grid from 2 to 4/alpha with `points` entries.
std::vector<double> default_t_max_grid(double alpha, std::size_t points);

/// round(log2(2 T_max)) clamped to [1, 12].
int qpe_bits_for(double t_max);

}  // namespace rqcels

#endif  // RQCELS_CONFIG_HPP
