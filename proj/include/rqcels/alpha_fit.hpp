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

#ifndef RQCELS_ALPHA_FIT_HPP
#define RQCELS_ALPHA_FIT_HPP

#include <cstddef>
#include <iosfwd>
#include <vector>

#include "rqcels/sampling.hpp"

namespace rqcels {

/// Result of regressing -log(B_n) on |t_n|.
struct AlphaEstimate {
    double alpha_hat = 0.0;   // fitted slope
    double intercept = 0.0;   // fitted b in log(B) + a|t| + b = 0
    double kappa = 0.0;       // ||N^{-1}||_2 of the 2x2 normal matrix
    std::size_t n_used = 0;
    std::size_t n_discarded = 0;  // entries with B <= 0
    double residual_rms = 0.0;
};

/// Uniform grid t_n = n / (alpha_guess * count), n = 1..count.
std::vector<double> default_benchmark_times(double alpha_guess, std::size_t count);

/// Least-squares fit of log(B_n) + a |t_n| + b = 0 over entries with B_n > 0.
AlphaEstimate fit_alpha(const BenchmarkRecord& record);

/// CSV with columns abs_t,B,log_residual (residual = log B + a|t| + b,
/// empty for discarded entries).
void write_regression_report(std::ostream& out, const BenchmarkRecord& record, const AlphaEstimate& fit);

}  // namespace rqcels

#endif  // RQCELS_ALPHA_FIT_HPP
