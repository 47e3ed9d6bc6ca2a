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

#include "rqcels/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>

#include "rqcels/errors.hpp"

namespace rqcels {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::string normalize_key(std::string key) {
    key = trim(key);
    key.erase(0, key.find_first_not_of('-'));
    const auto dot = key.rfind('.');
    if (dot != std::string::npos) key = key.substr(dot + 1);
    std::replace(key.begin(), key.end(), '-', '_');
    return key;
}

double to_double(const std::string& key, const std::string& v) {
    try {
        std::size_t used = 0;
        const double x = std::stod(v, &used);
        if (trim(v.substr(used)).empty()) return x;
    } catch (const std::exception&) {
    }
    throw ValidationError("config key '" + key + "' expects a number, got '" + v + "'");
}

long long to_int(const std::string& key, const std::string& v) {
    try {
        std::size_t used = 0;
        const long long x = std::stoll(v, &used);
        if (trim(v.substr(used)).empty()) return x;
    } catch (const std::exception&) {
    }
    throw ValidationError("config key '" + key + "' expects an integer, got '" + v + "'");
}

std::size_t to_count(const std::string& key, const std::string& v) {
    const long long x = to_int(key, v);
    if (x < 0) throw ValidationError("config key '" + key + "' must be nonnegative");
    return static_cast<std::size_t>(x);
}

bool to_bool(const std::string& key, const std::string& v) {
    const std::string s = trim(v);
    if (s == "true" || s == "1" || s == "yes" || s == "on") return true;
    if (s == "false" || s == "0" || s == "no" || s == "off") return false;
    throw ValidationError("config key '" + key + "' expects a boolean, got '" + v + "'");
}

std::vector<std::string> split_list(const std::string& v) {
    std::vector<std::string> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

std::vector<double> to_doubles(const std::string& key, const std::string& v) {
    std::vector<double> out;
    for (const auto& s : split_list(v)) out.push_back(to_double(key, s));
    return out;
}

std::string fmt(double x) {
    std::ostringstream os;
    os << std::setprecision(17) << x;
    return os.str();
}

std::string join(const std::vector<double>& xs) {
    std::string s;
    for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? "," : "") + fmt(xs[i]);
    return s;
}

}  // namespace

KeyValues parse_key_values(std::istream& in) {
    KeyValues kv;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find_first_of("#;");
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') throw ValidationError("malformed section header on line " + std::to_string(lineno));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ValidationError("expected key = value on line " + std::to_string(lineno));
        kv.emplace_back(normalize_key(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return kv;
}

KeyValues load_key_values(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config '" + path + "'");
    return parse_key_values(in);
}

const std::vector<std::string>& config_keys() {
    static const std::vector<std::string> keys = {
        "L",        "g",          "initial_state", "noise_model",  "noise_family", "alphas",  "tau",
        "twirl_instances",        "calibration_time", "methods",   "t_max",        "t_max_points",
        "n_t",      "n_s1",       "n_s2",          "n_b",          "n_rpe",        "n_qpe",   "qpe_bits",
        "gamma",    "repetitions", "seed",         "exact_expectations", "alpha_source", "reshuffle",
        "out_dir",  "threads"};
    return keys;
}

void ExperimentConfig::set(const std::string& raw_key, const std::string& value) {
    const std::string key = normalize_key(raw_key);
    const std::string v = trim(value);
    if (key == "L") {
        num_sites = static_cast<int>(to_int(key, v));
    } else if (key == "g") {
        g = to_double(key, v);
    } else if (key == "initial_state") {
        initial_state = v;
    } else if (key == "noise_model") {
        if (v == "global") {
            noise_model = NoiseModel::global;
        } else if (v == "local") {
            noise_model = NoiseModel::local;
        } else {
            throw ValidationError("noise_model must be 'global' or 'local'");
        }
    } else if (key == "noise_family") {
        noise_family = parse_noise_family(v);
    } else if (key == "alphas" || key == "alpha") {
        alphas = to_doubles(key, v);
    } else if (key == "tau") {
        tau = to_double(key, v);
    } else if (key == "twirl_instances") {
        twirl_instances = to_count(key, v);
    } else if (key == "calibration_time") {
        calibration_time = to_double(key, v);
    } else if (key == "methods") {
        methods.clear();
        for (const auto& m : split_list(v)) methods.push_back(parse_method(m));
    } else if (key == "t_max") {
        t_max = to_doubles(key, v);
    } else if (key == "t_max_points") {
        t_max_points = to_count(key, v);
    } else if (key == "n_t") {
        n_t = to_count(key, v);
    } else if (key == "n_s1") {
        n_s1 = to_int(key, v);
    } else if (key == "n_s2") {
        n_s2 = to_int(key, v);
    } else if (key == "n_b") {
        n_b = to_count(key, v);
    } else if (key == "n_rpe") {
        n_rpe = to_int(key, v);
    } else if (key == "n_qpe") {
        n_qpe = to_count(key, v);
    } else if (key == "qpe_bits") {
        qpe_bits = static_cast<int>(to_int(key, v));
    } else if (key == "gamma") {
        gamma = to_double(key, v);
    } else if (key == "repetitions") {
        repetitions = to_count(key, v);
    } else if (key == "seed") {
        seed = static_cast<Seed>(to_count(key, v));
    } else if (key == "exact_expectations") {
        exact_expectations = to_bool(key, v);
    } else if (key == "alpha_source") {
        if (v == "fit") {
            alpha_source = AlphaSource::fit;
        } else if (v == "exact") {
            alpha_source = AlphaSource::exact;
        } else {
            throw ValidationError("alpha_source must be 'fit' or 'exact'");
        }
    } else if (key == "reshuffle") {
        reshuffle = to_bool(key, v);
    } else if (key == "out_dir") {
        out_dir = v;
    } else if (key == "threads") {
        threads = static_cast<int>(to_int(key, v));
    } else {
        throw ValidationError("unknown config key '" + raw_key + "'");
    }
}

void ExperimentConfig::apply(const KeyValues& kv) {
    for (const auto& [k, v] : kv) set(k, v);
}

void ExperimentConfig::validate() const {
    if (num_sites < 2 || num_sites > kMaxDenseQubits - 1) throw ValidationError("L must lie in [2, 11]");
    if (initial_state != "plus") throw ValidationError("initial_state supports only 'plus'");
    if (alphas.empty()) throw ValidationError("alphas must be nonempty");
    for (double a : alphas) {
        if (!(a >= 0.0) || !std::isfinite(a)) throw ValidationError("alphas must be >= 0");
        if (t_max.empty() && !(a > 0.0)) throw ValidationError("the default T_max grid needs alpha > 0");
    }
    if (!(tau > 0.0)) throw ValidationError("tau must be positive");
    if (methods.empty()) throw ValidationError("methods must be nonempty");
    for (double t : t_max) {
        if (!(t > 0.0)) throw ValidationError("t_max values must be positive");
    }
    if (t_max.empty() && t_max_points < 2) throw ValidationError("t_max_points must be at least 2");
    if (n_t == 0 || n_s1 < 1 || n_s2 < 1 || n_b < 2 || n_rpe < 1 || n_qpe == 0) {
        throw ValidationError("budgets must be positive (n_b >= 2)");
    }
    if (qpe_bits < 0 || qpe_bits > 12) throw ValidationError("qpe_bits must lie in [0, 12]");
    if (!(gamma > 0.0)) throw ValidationError("gamma must be positive");
    if (repetitions == 0) throw ValidationError("repetitions must be positive");
    if (noise_model == NoiseModel::local && noise_family == NoiseFamily::none) {
        throw ValidationError("local noise needs a noise family");
    }
    if (twirl_instances > 0 && noise_family != NoiseFamily::coherent && noise_family != NoiseFamily::pauli) {
        throw ValidationError("twirling applies to coherent or pauli noise only");
    }
}

void ExperimentConfig::write(std::ostream& out) const {
    std::string ms;
    for (std::size_t i = 0; i < methods.size(); ++i) ms += (i ? "," : "") + std::string(method_name(methods[i]));
    out << "[model]\n";
    out << "L = " << num_sites << "\n";
    out << "g = " << fmt(g) << "\n";
    out << "initial_state = " << initial_state << "\n";
    out << "\n[noise]\n";
    out << "noise_model = " << (noise_model == NoiseModel::global ? "global" : "local") << "\n";
    out << "noise_family = " << noise_family_name(noise_family) << "\n";
    out << "alphas = " << join(alphas) << "\n";
    out << "tau = " << fmt(tau) << "\n";
    out << "twirl_instances = " << twirl_instances << "\n";
    out << "calibration_time = " << fmt(calibration_time) << "\n";
    out << "\n[methods]\n";
    out << "methods = " << ms << "\n";
    out << "\n[sweep]\n";
    out << "t_max = " << join(t_max) << "\n";
    out << "t_max_points = " << t_max_points << "\n";
    out << "\n[budget]\n";
    out << "n_t = " << n_t << "\n";
    out << "n_s1 = " << n_s1 << "\n";
    out << "n_s2 = " << n_s2 << "\n";
    out << "n_b = " << n_b << "\n";
    out << "n_rpe = " << n_rpe << "\n";
    out << "n_qpe = " << n_qpe << "\n";
    out << "qpe_bits = " << qpe_bits << "\n";
    out << "gamma = " << fmt(gamma) << "\n";
    out << "\n[run]\n";
    out << "repetitions = " << repetitions << "\n";
    out << "seed = " << seed << "\n";
    out << "exact_expectations = " << (exact_expectations ? "true" : "false") << "\n";
    out << "alpha_source = " << (alpha_source == AlphaSource::fit ? "fit" : "exact") << "\n";
    out << "reshuffle = " << (reshuffle ? "true" : "false") << "\n";
    out << "out_dir = " << out_dir << "\n";
    out << "threads = " << threads << "\n";
}

std::vector<double> ExperimentConfig::t_max_grid(double alpha) const {
    return t_max.empty() ? default_t_max_grid(alpha, t_max_points) : t_max;
}

ExperimentConfig load_config(const std::string& path) {
    ExperimentConfig c;
    c.apply(load_key_values(path));
    return c;
}

std::vector<double> default_t_max_grid(double alpha, std::size_t points) {
    if (!(alpha > 0.0)) throw ValidationError("default T_max grid needs alpha > 0");
    if (points < 2) throw ValidationError("T_max grid needs at least two points");
    const double lo = 2.0;
    const double hi = std::max(4.0 / alpha, 2.0 * lo);
    std::vector<double> g(points);
    for (std::size_t k = 0; k < points; ++k) {
        g[k] = lo * std::exp2(std::log2(hi / lo) * static_cast<double>(k) / static_cast<double>(points - 1));
    }
    g.back() = hi;
    return g;
}

int qpe_bits_for(double t_max) {
    if (!(t_max > 0.0)) throw ValidationError("T_max must be positive");
    const int d = static_cast<int>(std::lround(std::log2(2.0 * t_max)));
    return std::clamp(d, 1, 12);
}

}  // namespace rqcels
