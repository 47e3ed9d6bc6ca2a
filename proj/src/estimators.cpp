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

#include "rqcels/estimators.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <iomanip>
#include <limits>
#include <numeric>
#include <ostream>
#include <random>

#include "rqcels/errors.hpp"

namespace rqcels {

namespace {

struct Peak {
    double x = 0.0;
    double value = -1.0;
    int iterations = 0;
};

// Golden-section search for a maximum of f on [lo, hi].
template <typename F>
Peak golden_max(F&& f, double lo, double hi, double tol) {
    const double inv_phi = 0.5 * (std::sqrt(5.0) - 1.0);
    double a = lo, b = hi;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c), fd = f(d);
    Peak p;
    while (b - a > tol) {
        if (fc >= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
        ++p.iterations;
    }
    if (fc >= fd) {
        p.x = c;
        p.value = fc;
    } else {
        p.x = d;
        p.value = fd;
    }
    return p;
}

void check_dataset(const Dataset& data) {
    if (data.size() == 0) throw ValidationError("dataset is empty");
    if (data.values.size() != data.times.size()) throw ValidationError("dataset columns differ in length");
}

double default_spacing(const Dataset& data) {
    double t_max = data.meta.gamma * data.meta.width;
    for (double t : data.times) t_max = std::max(t_max, std::abs(t));
    return std::min(M_PI / 64.0, 1.0 / (8.0 * t_max));
}

// Maximizes |mean_n y_n exp(i theta t_n)|^2 over theta in [-pi, pi].
struct PowerPeak {
    double theta = 0.0;
    Complex g = 0.0;
    std::size_t grid_size = 0;
    int iterations = 0;
};

PowerPeak maximize_power(std::span<const double> t, std::span<const Complex> y, double spacing,
                         const GridOptions& opt) {
    const double h = spacing > 0.0 ? spacing : 0.0;
    const auto cells = static_cast<std::size_t>(std::ceil(2.0 * M_PI / h));
    const double step = 2.0 * M_PI / static_cast<double>(cells);
    std::vector<Complex> grid(cells + 1);
    kernels::fourier_mean_grid(opt.exec, t, y, -M_PI, step, grid);

    std::size_t best = 0;
    for (std::size_t k = 1; k < grid.size(); ++k) {
        if (std::norm(grid[k]) > std::norm(grid[best])) best = k;
    }
    const double center = -M_PI + static_cast<double>(best) * step;
    const double lo = std::max(-M_PI, center - step);
    const double hi = std::min(M_PI, center + step);
    auto power = [&](double th) { return std::norm(kernels::fourier_mean(t, y, th)); };
    std::vector<Complex> dy(y.size());
    for (std::size_t n = 0; n < y.size(); ++n) dy[n] = Complex(0.0, t[n]) * y[n];
    // Half the derivative of |G|^2.
    auto slope = [&](double th) {
        return std::real(std::conj(kernels::fourier_mean(t, y, th)) * kernels::fourier_mean(t, dy, th));
    };
    Peak p;
    if (slope(lo) > 0.0 && slope(hi) < 0.0) {
        double a = lo, b = hi;
        while (b - a > opt.tolerance && p.iterations < 200) {
            const double mid = 0.5 * (a + b);
            if (slope(mid) > 0.0) {
                a = mid;
            } else {
                b = mid;
            }
            ++p.iterations;
        }
        p.x = 0.5 * (a + b);
        p.value = power(p.x);
    } else {
        p = golden_max(power, lo, hi, opt.tolerance);
    }

    PowerPeak out;
    out.grid_size = grid.size();
    out.iterations = p.iterations;
    if (p.value >= std::norm(grid[best])) {
        out.theta = p.x;
        out.g = kernels::fourier_mean(t, y, p.x);
    } else {
        out.theta = center;
        out.g = grid[best];
    }
    return out;
}

double mean_norm(std::span<const Complex> y) {
    double s = 0.0;
    for (const auto& v : y) s += std::norm(v);
    return s / static_cast<double>(y.size());
}

std::vector<Complex> reweighted(const Dataset& data, double alpha_hat) {
    std::vector<Complex> y(data.size());
    for (std::size_t n = 0; n < data.size(); ++n) y[n] = std::exp(alpha_hat * std::abs(data.times[n])) * data.values[n];
    return y;
}

}  // namespace

std::string_view method_name(Method m) {
    switch (m) {
        case Method::robust_qcels:
            return "robust_qcels";
        case Method::qcels:
            return "qcels";
        case Method::rpe:
            return "rpe";
        case Method::qpe:
            return "qpe";
    }
    return "unknown";
}

Method parse_method(std::string_view name) {
    for (Method m : {Method::robust_qcels, Method::qcels, Method::rpe, Method::qpe}) {
        if (method_name(m) == name) return m;
    }
    throw ValidationError("unknown method '" + std::string(name) + "'");
}

Complex objective_G(const Dataset& data, double alpha_hat, double theta) {
    check_dataset(data);
    const auto y = reweighted(data, alpha_hat);
    return kernels::fourier_mean(data.times, y, theta);
}

double robust_loss(const Dataset& data, double alpha_hat, Complex r, double theta) {
    check_dataset(data);
    double s = 0.0;
    for (std::size_t n = 0; n < data.size(); ++n) {
        const double t = data.times[n];
        s += std::norm(std::exp(alpha_hat * std::abs(t)) * data.values[n] - r * std::polar(1.0, -theta * t));
    }
    return s / static_cast<double>(data.size());
}

EstimateResult robust_qcels(const Dataset& data, double alpha_hat, const GridOptions& grid) {
    check_dataset(data);
    if (!(alpha_hat >= 0.0) || !std::isfinite(alpha_hat)) throw ValidationError("alpha_hat must be >= 0");
    const auto y = reweighted(data, alpha_hat);
    const double spacing = grid.spacing > 0.0 ? grid.spacing : default_spacing(data);
    const PowerPeak peak = maximize_power(data.times, y, spacing, grid);

    EstimateResult res;
    res.method = Method::robust_qcels;
    res.theta_star = peak.theta;
    res.r_star = peak.g;
    res.objective = mean_norm(y) - std::norm(peak.g);
    res.grid_size = peak.grid_size;
    res.refinement_iterations = peak.iterations;
    return res;
}

QcelsOptions QcelsOptions::for_alpha_guess(double alpha_guess) {
    if (!(alpha_guess >= 0.0)) throw ValidationError("alpha guess must be >= 0");
    QcelsOptions o;
    o.decay_min = 0.0;
    o.decay_max = 4.0 * alpha_guess;
    return o;
}

EstimateResult qcels_fixed_decay(const Dataset& data, double decay, const GridOptions& grid) {
    check_dataset(data);
    std::vector<Complex> y(data.size());
    double w2 = 0.0;
    for (std::size_t n = 0; n < data.size(); ++n) {
        const double w = std::exp(-decay * std::abs(data.times[n]));
        y[n] = w * data.values[n];
        w2 += w * w;
    }
    w2 /= static_cast<double>(data.size());
    const double spacing = grid.spacing > 0.0 ? grid.spacing : default_spacing(data);
    const PowerPeak peak = maximize_power(data.times, y, spacing, grid);

    EstimateResult res;
    res.method = Method::qcels;
    res.theta_star = peak.theta;
    res.r_star = peak.g / w2;
    res.objective = mean_norm(data.values) - std::norm(peak.g) / w2;
    res.grid_size = peak.grid_size;
    res.refinement_iterations = peak.iterations;
    res.decay_rate = decay;
    return res;
}

EstimateResult qcels_baseline(const Dataset& data, const QcelsOptions& options) {
    check_dataset(data);
    if (!(options.decay_max >= options.decay_min) || options.decay_min < 0.0) {
        throw ValidationError("decay range must satisfy 0 <= min <= max");
    }
    if (options.decay_points < 2 || options.decay_max == options.decay_min) {
        return qcels_fixed_decay(data, options.decay_min, options.grid);
    }
    const double step =
        (options.decay_max - options.decay_min) / static_cast<double>(options.decay_points - 1);
    EstimateResult best;
    best.objective = std::numeric_limits<double>::infinity();
    std::size_t best_k = 0;
    std::size_t evaluations = 0;
    for (std::size_t k = 0; k < options.decay_points; ++k) {
        const double decay = options.decay_min + static_cast<double>(k) * step;
        auto r = qcels_fixed_decay(data, decay, options.grid);
        ++evaluations;
        if (r.objective < best.objective) {
            best = r;
            best_k = k;
        }
    }
    const double center = options.decay_min + static_cast<double>(best_k) * step;
    const double lo = std::max(options.decay_min, center - step);
    const double hi = std::min(options.decay_max, center + step);
    auto neg = [&](double decay) { return -qcels_fixed_decay(data, decay, options.grid).objective; };
    const Peak p = golden_max(neg, lo, hi, options.decay_tolerance);
    if (-p.value < best.objective) best = qcels_fixed_decay(data, p.x, options.grid);
    best.grid_size = evaluations;
    best.refinement_iterations = p.iterations;
    return best;
}

EstimateResult rpe_from_expectations(Complex mean, double time, ShotBudget shots, double reference_energy,
                                     Seed seed) {
    if (!(time > 0.0) || !std::isfinite(time)) throw ValidationError("RPE time must be positive");
    double p = mean.real(), q = mean.imag();
    if (!shots.is_exact()) {
        p = hadamard_shots(p, shots.count(), derive_seed(seed, {stream::kReal}));
        q = hadamard_shots(q, shots.count(), derive_seed(seed, {stream::kImag}));
    }
    if (p == 0.0 && q == 0.0) throw UndefinedAngleError("RPE expectations are both zero; phase is undefined");
    const double raw = -std::atan2(q, p) / time;
    const double k = std::round((reference_energy - raw) * time / (2.0 * M_PI));

    EstimateResult res;
    res.method = Method::rpe;
    res.theta_star = raw + 2.0 * M_PI * k / time;
    res.r_star = Complex(p, q);
    res.objective = std::hypot(p, q);
    res.oracle_assisted = true;
    return res;
}

EstimateResult rpe(const SpectralModel& model, const GlobalDepolarizing& noise, double time, ShotBudget shots,
                   double reference_energy, Seed seed) {
    if (!(time > 0.0) || !std::isfinite(time)) throw ValidationError("RPE time must be positive");
    return rpe_from_expectations(noisy_signal(model, noise, time), time, shots, reference_energy, seed);
}

double dirichlet_kernel(double x, std::size_t n) {
    const double s = std::sin(0.5 * x);
    if (std::abs(s) < 1e-9) return 1.0;
    const double nn = static_cast<double>(n);
    const double num = std::sin(0.5 * nn * x);
    return (num * num) / (nn * nn * s * s);
}

std::vector<double> qpe_distribution(const SpectralModel& model, const GlobalDepolarizing& noise, int bits) {
    if (bits < 1 || bits > 20) throw ValidationError("QPE bit count must lie in [1, 20]");
    const std::size_t n = std::size_t{1} << bits;
    const double nn = static_cast<double>(n);
    const double keep = std::exp(-noise.alpha() * nn / 2.0);
    std::vector<double> prob(n);
    const auto lam = model.eigenvalues();
    const auto ov = model.overlaps();
    for (std::size_t i = 0; i < n; ++i) {
        const double k = static_cast<double>(i) - nn / 2.0;
        double pk = 0.0;
        for (std::size_t m = 0; m < model.size(); ++m) {
            if (ov[m] > 0.0) pk += ov[m] * dirichlet_kernel(2.0 * M_PI * k / nn - lam[m], n);
        }
        prob[i] = keep * pk + (1.0 - keep) / nn;
    }
    return prob;
}

EstimateResult qpe_sample(const SpectralModel& model, const GlobalDepolarizing& noise, int bits,
                          std::size_t repetitions, Seed seed) {
    if (repetitions == 0) throw ValidationError("QPE needs at least one repetition");
    const auto prob = qpe_distribution(model, noise, bits);
    std::vector<double> cdf(prob.size());
    std::partial_sum(prob.begin(), prob.end(), cdf.begin());
    const double total = cdf.back();
    Engine engine = make_engine(seed);
    std::uniform_real_distribution<double> uni(0.0, total);
    std::size_t lowest = prob.size() - 1;
    for (std::size_t r = 0; r < repetitions; ++r) {
        const double u = uni(engine);
        auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        const auto idx = std::min<std::size_t>(static_cast<std::size_t>(it - cdf.begin()), prob.size() - 1);
        lowest = std::min(lowest, idx);
    }
    const double nn = static_cast<double>(prob.size());
    EstimateResult res;
    res.method = Method::qpe;
    res.theta_star = 2.0 * M_PI * (static_cast<double>(lowest) - nn / 2.0) / nn;
    res.grid_size = prob.size();
    return res;
}

double ideal_loss(const SpectralModel& model, double alpha, double alpha_hat, const TimeDistribution& dist,
                  Complex r, double theta) {
    const auto lam = model.eigenvalues();
    const auto ov = model.overlaps();
    auto f = [&](double t) {
        Complex s = 0.0;
        for (std::size_t m = 0; m < model.size(); ++m) s += ov[m] * std::polar(1.0, -lam[m] * t);
        const Complex d = std::exp((alpha_hat - alpha) * std::abs(t)) * s - r * std::polar(1.0, -theta * t);
        return dist.density(t) * std::norm(d);
    };
    using Quad = boost::math::quadrature::gauss_kronrod<double, 31>;
    const double edge = dist.max_time();
    double total = 0.0;
    for (const auto& [a, b] : {std::pair{-edge, 0.0}, std::pair{0.0, edge}}) {
        double err = 0.0;
        const double v = Quad::integrate(f, a, b, 20, 1e-12, &err);
        if (!(err <= 1e-8 * std::abs(v) + 1e-15)) {
            throw AccuracyError("ideal loss quadrature did not reach 1e-8 relative accuracy");
        }
        total += v;
    }
    return total;
}

LandscapeDump dump_landscape(const LandscapeObjective& objective, std::span<const double> thetas) {
    LandscapeDump dump;
    dump.thetas.assign(thetas.begin(), thetas.end());
    dump.values.reserve(thetas.size());
    if (const auto* e = std::get_if<EmpiricalLandscape>(&objective)) {
        dump.objective = "empirical";
        dump.r = e->r;
        for (double th : thetas) dump.values.push_back(robust_loss(e->data.get(), e->alpha_hat, e->r, th));
    } else {
        const auto& i = std::get<IdealLandscape>(objective);
        dump.objective = "ideal";
        dump.r = i.r;
        for (double th : thetas) {
            dump.values.push_back(ideal_loss(i.model.get(), i.alpha, i.alpha_hat, i.dist, i.r, th));
        }
    }
    return dump;
}

std::vector<double> linear_grid(double lo, double hi, std::size_t count) {
    if (count < 2) throw ValidationError("grid needs at least two points");
    std::vector<double> g(count);
    for (std::size_t k = 0; k < count; ++k) {
        g[k] = lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(count - 1);
    }
    return g;
}

void write_estimates_csv(std::ostream& out, std::span<const EstimateResult> results, const Metadata& meta) {
    for (const auto& [k, v] : meta) out << "# " << k << '=' << v << '\n';
    out << "method,theta_star,r_re,r_im,objective,grid_size,refinements,decay_rate,oracle_assisted\n";
    out << std::setprecision(17);
    for (const auto& r : results) {
        out << method_name(r.method) << ',' << r.theta_star << ',' << r.r_star.real() << ',' << r.r_star.imag()
            << ',' << r.objective << ',' << r.grid_size << ',' << r.refinement_iterations << ',' << r.decay_rate
            << ',' << (r.oracle_assisted ? 1 : 0) << '\n';
    }
}

void write_landscape_csv(std::ostream& out, const LandscapeDump& dump, const Metadata& meta) {
    for (const auto& [k, v] : meta) out << "# " << k << '=' << v << '\n';
    out << std::setprecision(17);
    out << "# objective=" << dump.objective << '\n';
    out << "# r_re=" << dump.r.real() << '\n';
    out << "# r_im=" << dump.r.imag() << '\n';
    out << "theta,value\n";
    for (std::size_t k = 0; k < dump.thetas.size(); ++k) out << dump.thetas[k] << ',' << dump.values[k] << '\n';
}

}  // namespace rqcels
