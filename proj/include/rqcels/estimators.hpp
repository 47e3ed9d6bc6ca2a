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

#ifndef RQCELS_ESTIMATORS_HPP
#define RQCELS_ESTIMATORS_HPP

#include <functional>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "rqcels/sampling.hpp"

namespace rqcels {

enum class Method { robust_qcels, qcels, rpe, qpe };

std::string_view method_name(Method m);
/// Inverse of method_name; throws ValidationError on unknown names.
Method parse_method(std::string_view name);

struct EstimateResult {
    Method method = Method::robust_qcels;
    double theta_star = 0.0;
    Complex r_star = 0.0;
    double objective = 0.0;
    std::size_t grid_size = 0;
    int refinement_iterations = 0;
    /// Fitted decay rate theta_1 (qcels only).
    double decay_rate = 0.0;
    /// Branch chosen with knowledge of the true ground energy (rpe only).
    bool oracle_assisted = false;
};

/// Coarse grid plus golden-section refinement over [-pi, pi].
struct GridOptions {
    /// Grid spacing; <= 0 selects min(pi/64, 1/(8 t_max)).
    double spacing = 0.0;
    /// Final bracket width of the golden-section search.
    double tolerance = 1e-12;
    Exec exec = Exec::parallel;
};

/// G(theta) = (1/N) sum_n exp(alpha_hat |t_n|) Z_n exp(i theta t_n).
Complex objective_G(const Dataset& data, double alpha_hat, double theta);

/// Empirical loss (1/N) sum_n |exp(alpha_hat |t_n|) Z_n - r exp(-i theta t_n)|^2.
double robust_loss(const Dataset& data, double alpha_hat, Complex r, double theta);

/// Minimizes the reweighted loss. For fixed theta the optimal r is G(theta),
/// so theta* maximizes |G|^2 and r* = G(theta*).
EstimateResult robust_qcels(const Dataset& data, double alpha_hat, const GridOptions& grid = {});

struct QcelsOptions {
    double decay_min = 0.0;
    double decay_max = 1.0;
    std::size_t decay_points = 64;
    double decay_tolerance = 1e-8;
    GridOptions grid;

    /// Range [0, 4 alpha_guess].
    static QcelsOptions for_alpha_guess(double alpha_guess);
};

/// Fits r exp(-theta_1 |t|) exp(-i theta_2 t) to the raw data; theta_2 is the
/// energy estimate, theta_1 is reported in decay_rate.
EstimateResult qcels_baseline(const Dataset& data, const QcelsOptions& options);

/// Induced objective of the baseline at fixed theta_1 (minimized over r and theta_2).
EstimateResult qcels_fixed_decay(const Dataset& data, double decay, const GridOptions& grid = {});

/// RPE from the noiseless-shot means Re/Im of the signal at `time`.
EstimateResult rpe_from_expectations(Complex mean, double time, ShotBudget shots, double reference_energy,
                                     Seed seed);

/// Single-time phase estimate -atan2(q, p) / T, moved to the branch
/// theta + 2 pi k / T closest to `reference_energy`.
EstimateResult rpe(const SpectralModel& model, const GlobalDepolarizing& noise, double time, ShotBudget shots,
                   double reference_energy, Seed seed);

/// Squared, normalized Dirichlet kernel sin^2(N x / 2) / (N^2 sin^2(x / 2)).
double dirichlet_kernel(double x, std::size_t n);

/// Outcome distribution of noisy phase estimation over k = -N/2 .. N/2-1
/// (index k + N/2), N = 2^bits.
std::vector<double> qpe_distribution(const SpectralModel& model, const GlobalDepolarizing& noise, int bits);

/// Draws `repetitions` outcomes and returns 2 pi min_i k_i / N.
EstimateResult qpe_sample(const SpectralModel& model, const GlobalDepolarizing& noise, int bits,
                          std::size_t repetitions, Seed seed);

/// Integral of a(t) |exp((alpha_hat - alpha)|t|) sum_m p_m exp(-i lambda_m t) - r exp(-i theta t)|^2
/// over the support of `dist`, adaptive Gauss-Kronrod to 1e-8 relative error.
double ideal_loss(const SpectralModel& model, double alpha, double alpha_hat, const TimeDistribution& dist,
                  Complex r, double theta);

struct EmpiricalLandscape {
    std::reference_wrapper<const Dataset> data;
    double alpha_hat;
    Complex r;
};

struct IdealLandscape {
    std::reference_wrapper<const SpectralModel> model;
    double alpha;
    double alpha_hat;
    TimeDistribution dist;
    Complex r;
};

using LandscapeObjective = std::variant<EmpiricalLandscape, IdealLandscape>;

struct LandscapeDump {
    std::vector<double> thetas;
    std::vector<double> values;
    std::string objective;  // "empirical" or "ideal"
    Complex r = 0.0;
};

LandscapeDump dump_landscape(const LandscapeObjective& objective, std::span<const double> thetas);

/// Evenly spaced points from lo to hi inclusive.
std::vector<double> linear_grid(double lo, double hi, std::size_t count);

using Metadata = std::map<std::string, std::string>;

void write_estimates_csv(std::ostream& out, std::span<const EstimateResult> results, const Metadata& meta);
void write_landscape_csv(std::ostream& out, const LandscapeDump& dump, const Metadata& meta);

}  // namespace rqcels

#endif  // RQCELS_ESTIMATORS_HPP
