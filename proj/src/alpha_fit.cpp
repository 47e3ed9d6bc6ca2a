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

#include "rqcels/alpha_fit.hpp"

#include <cmath>
#include <iomanip>
#include <ostream>

#include "rqcels/errors.hpp"

namespace rqcels {

std::vector<double> default_benchmark_times(double alpha_guess, std::size_t count) {
    if (!(alpha_guess > 0.0) || !std::isfinite(alpha_guess)) {
        throw ValidationError("alpha guess must be positive");
    }
    if (count < 2) throw ValidationError("need at least two benchmark times");
    const double cap = 1.0 / alpha_guess;
    std::vector<double> times(count);
    for (std::size_t n = 1; n <= count; ++n) times[n - 1] = static_cast<double>(n) * cap / static_cast<double>(count);
    return times;
}

AlphaEstimate fit_alpha(const BenchmarkRecord& record) {
    // Normal equations for minimizing sum (y_n + a x_n + b)^2, y = log B, x = |t|:
    //   [ n     Sx  ] [b]   [-Sy ]
    //   [ Sx    Sxx ] [a] = [-Sxy]
    double n = 0.0, sx = 0.0, sxx = 0.0, sy = 0.0, sxy = 0.0;
    AlphaEstimate fit;
    for (std::size_t k = 0; k < record.size(); ++k) {
        if (!(record.values[k] > 0.0)) {
            ++fit.n_discarded;
            continue;
        }
        const double x = std::abs(record.times[k]);
        const double y = std::log(record.values[k]);
        n += 1.0;
        sx += x;
        sxx += x * x;
        sy += y;
        sxy += x * y;
        ++fit.n_used;
    }
    if (fit.n_used < 2) {
        throw EstimationError("fewer than two positive benchmark outcomes (" + std::to_string(fit.n_used) +
                              " usable); noise is too strong for the chosen times");
    }
    const double det = n * sxx - sx * sx;
    if (!(det > 1e-12 * n * sxx)) {
        throw ConditioningError("benchmark times have (nearly) identical |t|; regression is singular");
    }
    fit.intercept = (-sy * sxx + sx * sxy) / det;
    fit.alpha_hat = (-n * sxy + sx * sy) / det;

    // ||M^{-1}||_2 = 1 / lambda_min(M) for the symmetric positive definite M.
    const double half_trace = 0.5 * (n + sxx);
    const double disc = std::sqrt(0.25 * (n - sxx) * (n - sxx) + sx * sx);
    const double lambda_min = det / (half_trace + disc);
    fit.kappa = 1.0 / lambda_min;

    double ss = 0.0;
    for (std::size_t k = 0; k < record.size(); ++k) {
        if (!(record.values[k] > 0.0)) continue;
        const double r = std::log(record.values[k]) + fit.alpha_hat * std::abs(record.times[k]) + fit.intercept;
        ss += r * r;
    }
    fit.residual_rms = std::sqrt(ss / n);
    return fit;
}

void write_regression_report(std::ostream& out, const BenchmarkRecord& record, const AlphaEstimate& fit) {
    out << "abs_t,B,log_residual\n";
    out << std::setprecision(17);
    for (std::size_t k = 0; k < record.size(); ++k) {
        const double x = std::abs(record.times[k]);
        out << x << ',' << record.values[k] << ',';
        if (record.values[k] > 0.0) out << std::log(record.values[k]) + fit.alpha_hat * x + fit.intercept;
        out << '\n';
    }
}

}  // namespace rqcels
