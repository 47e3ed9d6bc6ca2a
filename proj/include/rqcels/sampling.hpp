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

#ifndef RQCELS_SAMPLING_HPP
#define RQCELS_SAMPLING_HPP

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <span>
#include <vector>

#include "rqcels/kernels.hpp"
#include "rqcels/rng.hpp"
#include "rqcels/signal.hpp"

namespace rqcels {

/// Normal density with standard deviation `width`, truncated to
/// [-gamma * width, gamma * width] and renormalized.
class TimeDistribution {
   public:
    TimeDistribution(double width, double gamma);

    double width() const { return width_; }
    double gamma() const { return gamma_; }
    /// Largest reachable |t|, gamma * width.
    double max_time() const { return gamma_ * width_; }
    double density(double t) const;
    double cdf(double t) const;

   private:
    double width_;
    double gamma_;
    double norm_;  // 2 Phi(gamma) - 1
};

/// Number of ancilla measurements averaged per circuit. The exact variant
/// stands in for infinitely many shots and returns expectation values.
class ShotBudget {
   public:
    explicit ShotBudget(long long count);
    static ShotBudget exact() { return ShotBudget(); }

    bool is_exact() const { return count_ == 0; }
    long long count() const { return count_; }

   private:
    ShotBudget() = default;
    long long count_ = 0;
};

struct DatasetMeta {
    double width = 1.0;  // T
    double gamma = 1.0;
    ShotBudget shots = ShotBudget::exact();
    Seed seed = 0;
};

/// Paired Hadamard-test record {(t_n, Z_n)} stored column-wise.
struct Dataset {
    std::vector<double> times;
    std::vector<Complex> values;
    DatasetMeta meta;

    std::size_t size() const { return times.size(); }
};

struct BenchmarkRecord {
    std::vector<double> times;
    std::vector<double> values;
    ShotBudget shots = ShotBudget::exact();
    Seed seed = 0;

    std::size_t size() const { return times.size(); }
};

/// I.i.d. draws from `dist` by rejection from the untruncated normal.
std::vector<double> sample_times(const TimeDistribution& dist, std::size_t count, Seed seed);

/// Average of `shots` i.i.d. +/-1 outcomes with P(+1) = (1 + mean) / 2.
double hadamard_shots(double mean, long long shots, Engine& engine);
double hadamard_shots(double mean, long long shots, Seed seed);

/// Mean of Z at (index, time). Must be safe to call concurrently.
using SignalFn = std::function<Complex(std::size_t index, double t)>;

/// Shot-averages a dataset whose per-record expectation is `signal`.
/// Record n uses the child streams (seed, real, n) and (seed, imag, n), so the
/// result does not depend on `exec`.
Dataset sample_dataset(std::span<const double> times, const SignalFn& signal, const DatasetMeta& meta,
                       Exec exec = Exec::parallel);

/// Time draws from `dist`, then `sample_dataset` on the global-depolarizing signal.
Dataset generate_dataset(const SpectralModel& model, const GlobalDepolarizing& noise,
                         const TimeDistribution& dist, std::size_t n_times, ShotBudget shots, Seed seed,
                         Exec exec = Exec::parallel);

/// Shot-averaged benchmarking outcomes for the given means (+/-1 observable).
BenchmarkRecord sample_benchmarks(std::span<const double> times, std::span<const double> means,
                                  ShotBudget shots, Seed seed);

BenchmarkRecord generate_benchmarks(const GlobalDepolarizing& noise, std::span<const double> times,
                                    ShotBudget shots, Seed seed);

/// Text format: `#`-prefixed `key=value` header, a `t,re,im` column line,
/// then one record per line written with 17 significant digits.
void write_dataset(std::ostream& out, const Dataset& data);
Dataset read_dataset(std::istream& in);
void save_dataset(const std::string& path, const Dataset& data);
Dataset load_dataset(const std::string& path);

}  // namespace rqcels

#endif  // RQCELS_SAMPLING_HPP
