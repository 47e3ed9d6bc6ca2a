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

#include "rqcels/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>
#include <string>

#include "rqcels/errors.hpp"

namespace rqcels {

namespace {

double std_normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

double checked_mean(double mean) {
    if (!(std::abs(mean) <= 1.0 + 1e-9)) {
        throw ValidationError("Hadamard-test mean " + std::to_string(mean) + " lies outside [-1, 1]");
    }
    return std::clamp(mean, -1.0, 1.0);
}

std::string format_double(double x) {
    std::ostringstream os;
    os << std::setprecision(17) << x;
    return os.str();
}

double parse_double(const std::string& s, const std::string& what) {
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw IoError("cannot parse " + what + " from '" + s + "'");
    }
}

}  // namespace

TimeDistribution::TimeDistribution(double width, double gamma) : width_(width), gamma_(gamma) {
    if (!(width > 0.0) || !std::isfinite(width)) throw ValidationError("time width T must be positive");
    if (!(gamma > 0.0) || !std::isfinite(gamma)) throw ValidationError("truncation gamma must be positive");
    norm_ = 2.0 * std_normal_cdf(gamma) - 1.0;
}

double TimeDistribution::density(double t) const {
    if (std::abs(t) > max_time()) return 0.0;
    const double z = t / width_;
    return std::exp(-0.5 * z * z) / (std::sqrt(2.0 * M_PI) * width_ * norm_);
}

double TimeDistribution::cdf(double t) const {
    if (t <= -max_time()) return 0.0;
    if (t >= max_time()) return 1.0;
    return (std_normal_cdf(t / width_) - std_normal_cdf(-gamma_)) / norm_;
}

ShotBudget::ShotBudget(long long count) : count_(count) {
    if (count < 1) throw ValidationError("shot count must be at least 1");
}

std::vector<double> sample_times(const TimeDistribution& dist, std::size_t count, Seed seed) {
    Engine engine = make_engine(seed);
    std::normal_distribution<double> normal(0.0, dist.width());
    const double bound = dist.max_time();
    std::vector<double> out;
    out.reserve(count);
    while (out.size() < count) {
        const double t = normal(engine);
        if (std::abs(t) <= bound) out.push_back(t);
    }
    return out;
}

double hadamard_shots(double mean, long long shots, Engine& engine) {
    const double m = checked_mean(mean);
    if (shots < 1) throw ValidationError("shot count must be at least 1");
    return kernels::draw_shot_mean(m, shots, engine);
}

double hadamard_shots(double mean, long long shots, Seed seed) {
    Engine engine = make_engine(seed);
    return hadamard_shots(mean, shots, engine);
}

Dataset sample_dataset(std::span<const double> times, const SignalFn& signal, const DatasetMeta& meta,
                       Exec exec) {
    Dataset data;
    data.meta = meta;
    data.times.assign(times.begin(), times.end());
    std::vector<Complex> means(times.size());
    for (std::size_t n = 0; n < times.size(); ++n) {
        const Complex m = signal(n, times[n]);
        means[n] = Complex(checked_mean(m.real()), checked_mean(m.imag()));
    }
    if (meta.shots.is_exact()) {
        data.values = std::move(means);
    } else {
        data.values.resize(times.size());
        kernels::shot_average(exec, means, meta.shots.count(), meta.seed, data.values);
    }
    return data;
}

Dataset generate_dataset(const SpectralModel& model, const GlobalDepolarizing& noise,
                         const TimeDistribution& dist, std::size_t n_times, ShotBudget shots, Seed seed,
                         Exec exec) {
    if (n_times == 0) throw ValidationError("dataset needs at least one time sample");
    const auto times = sample_times(dist, n_times, derive_seed(seed, {stream::kTimes}));
    DatasetMeta meta{dist.width(), dist.gamma(), shots, seed};
    return sample_dataset(
        times, [&](std::size_t, double t) { return noisy_signal(model, noise, t); }, meta, exec);
}

BenchmarkRecord sample_benchmarks(std::span<const double> times, std::span<const double> means,
                                  ShotBudget shots, Seed seed) {
    if (times.size() != means.size()) throw ValidationError("benchmark times and means differ in length");
    BenchmarkRecord rec;
    rec.times.assign(times.begin(), times.end());
    rec.shots = shots;
    rec.seed = seed;
    rec.values.resize(times.size());
    for (std::size_t n = 0; n < times.size(); ++n) {
        const double m = checked_mean(means[n]);
        if (shots.is_exact()) {
            rec.values[n] = m;
        } else {
            Engine engine = make_engine(derive_seed(seed, {stream::kBenchmark, n}));
            rec.values[n] = kernels::draw_shot_mean(m, shots.count(), engine);
        }
    }
    return rec;
}

BenchmarkRecord generate_benchmarks(const GlobalDepolarizing& noise, std::span<const double> times,
                                    ShotBudget shots, Seed seed) {
    std::vector<double> means(times.size());
    for (std::size_t n = 0; n < times.size(); ++n) means[n] = benchmark_expectation(noise, times[n]);
    return sample_benchmarks(times, means, shots, seed);
}

void write_dataset(std::ostream& out, const Dataset& data) {
    out << "# rqcels-dataset v1\n";
    out << "# T=" << format_double(data.meta.width) << "\n";
    out << "# gamma=" << format_double(data.meta.gamma) << "\n";
    out << "# n_t=" << data.size() << "\n";
    out << "# n_shots=" << (data.meta.shots.is_exact() ? std::string("exact") : std::to_string(data.meta.shots.count()))
        << "\n";
    out << "# seed=" << data.meta.seed << "\n";
    out << "t,re,im\n";
    for (std::size_t n = 0; n < data.size(); ++n) {
        out << format_double(data.times[n]) << ',' << format_double(data.values[n].real()) << ','
            << format_double(data.values[n].imag()) << '\n';
    }
}

Dataset read_dataset(std::istream& in) {
    std::map<std::string, std::string> header;
    std::string line;
    bool columns_seen = false;
    Dataset data;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line[0] == '#') {
            const auto eq = line.find('=');
            if (eq == std::string::npos) continue;
            auto key = line.substr(1, eq - 1);
            key.erase(0, key.find_first_not_of(' '));
            header[key] = line.substr(eq + 1);
            continue;
        }
        if (!columns_seen) {
            if (line != "t,re,im") throw IoError("expected 't,re,im' column line, got '" + line + "'");
            columns_seen = true;
            continue;
        }
        std::istringstream fields(line);
        std::string a, b, c;
        if (!std::getline(fields, a, ',') || !std::getline(fields, b, ',') || !std::getline(fields, c)) {
            throw IoError("malformed dataset record '" + line + "'");
        }
        data.times.push_back(parse_double(a, "t"));
        data.values.emplace_back(parse_double(b, "Re Z"), parse_double(c, "Im Z"));
    }
    if (!columns_seen) throw IoError("dataset has no column line");
    if (header.count("T")) data.meta.width = parse_double(header["T"], "T");
    if (header.count("gamma")) data.meta.gamma = parse_double(header["gamma"], "gamma");
    if (header.count("seed")) data.meta.seed = std::stoull(header["seed"]);
    if (header.count("n_shots") && header["n_shots"] != "exact") {
        data.meta.shots = ShotBudget(std::stoll(header["n_shots"]));
    }
    if (header.count("n_t") && std::stoull(header["n_t"]) != data.size()) {
        throw IoError("dataset header n_t does not match the record count");
    }
    return data;
}

void save_dataset(const std::string& path, const Dataset& data) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    write_dataset(out, data);
    if (!out) throw IoError("failed writing '" + path + "'");
}

Dataset load_dataset(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path + "' for reading");
    return read_dataset(in);
}

}  // namespace rqcels
