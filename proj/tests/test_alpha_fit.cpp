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

#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "rqcels/alpha_fit.hpp"
#include "rqcels/errors.hpp"

using namespace rqcels;

namespace {

BenchmarkRecord exact_record(double alpha, const std::vector<double>& times) {
    return generate_benchmarks(GlobalDepolarizing(alpha), times, ShotBudget::exact(), 0);
}

}  // namespace

TEST(BenchmarkTimes, Grid) {
    const auto t = default_benchmark_times(0.125, 10);
    ASSERT_EQ(t.size(), 10u);
    for (std::size_t n = 0; n < 10; ++n) EXPECT_NEAR(t[n], 0.8 * double(n + 1), 1e-12);
    const auto u = default_benchmark_times(1.0, 2);
    EXPECT_NEAR(u[0], 0.5, 1e-15);
    EXPECT_NEAR(u[1], 1.0, 1e-15);
    EXPECT_THROW(default_benchmark_times(0.0, 10), ValidationError);
    EXPECT_THROW(default_benchmark_times(0.1, 1), ValidationError);
}

TEST(FitAlpha, ExactDataRecoversRate) {
    const auto fit = fit_alpha(exact_record(0.25, default_benchmark_times(0.25, 10)));
    EXPECT_NEAR(fit.alpha_hat, 0.25, 1e-12);
    EXPECT_NEAR(fit.intercept, 0.0, 1e-12);
    EXPECT_LE(fit.residual_rms, 1e-12);
    EXPECT_EQ(fit.n_used, 10u);
    EXPECT_EQ(fit.n_discarded, 0u);
}

TEST(FitAlpha, ZeroNoise) {
    const auto fit = fit_alpha(exact_record(0.0, {0.5, 1.5, 4.0}));
    EXPECT_EQ(fit.alpha_hat, 0.0);
    const auto sampled = generate_benchmarks(GlobalDepolarizing(0.0), std::vector<double>{1.0, 2.0}, ShotBudget(100), 3);
    EXPECT_EQ(fit_alpha(sampled).alpha_hat, 0.0);
}

TEST(FitAlpha, MonteCarloAccuracy) {
    const auto times = default_benchmark_times(0.125, 10);
    int good = 0;
    for (Seed s = 0; s < 100; ++s) {
        const auto rec = generate_benchmarks(GlobalDepolarizing(0.125), times, ShotBudget(10000), 500 + s);
        if (std::abs(fit_alpha(rec).alpha_hat - 0.125) <= 0.02) ++good;
    }
    EXPECT_GE(good, 95);
}

TEST(FitAlpha, KappaMatchesCofactorInverse) {
    for (const auto& times : {std::vector<double>{1.0, 2.0}, default_benchmark_times(0.25, 10),
                              std::vector<double>{0.1, 0.7, 3.3, 9.0}}) {
        const auto fit = fit_alpha(exact_record(0.3, times));
        // Normal matrix of the model log B + a|t| + b: [[sum t^2, sum t], [sum t, n]].
        double s2 = 0, s1 = 0;
        for (double t : times) {
            s2 += t * t;
            s1 += std::abs(t);
        }
        const double n = double(times.size());
        const double det = s2 * n - s1 * s1;
        // Inverse by cofactors, then its spectral norm (symmetric positive definite: largest eigenvalue).
        const double a = n / det, b = -s1 / det, c = s2 / det;
        const double tr = a + c, dd = a * c - b * b;
        const double lmax = 0.5 * (tr + std::sqrt(tr * tr - 4 * dd));
        EXPECT_NEAR(fit.kappa, lmax, 1e-12 * lmax);
    }
}

TEST(FitAlpha, ScaleEquivariance) {
    const std::vector<double> times{0.4, 1.1, 2.0, 3.7};
    const auto base = fit_alpha(exact_record(0.2, times));
    for (double c : {0.5, 3.0}) {
        std::vector<double> scaled;
        for (double t : times) scaled.push_back(c * t);
        auto rec = exact_record(0.2, times);
        rec.times = scaled;
        EXPECT_NEAR(fit_alpha(rec).alpha_hat, base.alpha_hat / c, 1e-12);
    }
}

TEST(FitAlpha, DiscardsNonPositiveAndFailsWithoutEnough) {
    BenchmarkRecord rec;
    rec.times = {1.0, 2.0, 3.0, 4.0};
    rec.values = {std::exp(-0.5), std::exp(-1.0), 0.0, -0.02};
    const auto fit = fit_alpha(rec);
    EXPECT_EQ(fit.n_discarded, 2u);
    EXPECT_EQ(fit.n_used, 2u);
    EXPECT_NEAR(fit.alpha_hat, 0.5, 1e-12);

    rec.values = {0.3, 0.0, 0.0, -0.1};
    EXPECT_THROW(fit_alpha(rec), EstimationError);
}

TEST(FitAlpha, EqualTimesIsIllConditioned) {
    BenchmarkRecord rec;
    rec.times = {2.0, 2.0, 2.0};
    rec.values = {0.5, 0.6, 0.55};
    EXPECT_THROW(fit_alpha(rec), ConditioningError);
}

TEST(FitAlpha, RegressionReportColumns) {
    BenchmarkRecord rec;
    rec.times = {1.0, 2.0, 3.0};
    rec.values = {std::exp(-0.25), -0.1, std::exp(-0.75)};
    const auto fit = fit_alpha(rec);
    std::ostringstream os;
    write_regression_report(os, rec, fit);
    std::istringstream is(os.str());
    std::string line;
    std::getline(is, line);
    EXPECT_EQ(line, "abs_t,B,log_residual");
    int rows = 0;
    std::string discarded;
    while (std::getline(is, line)) {
        ++rows;
        if (rows == 2) discarded = line;
    }
    EXPECT_EQ(rows, 3);
    EXPECT_EQ(discarded.back(), ',');
}
