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

#ifndef RQCELS_SIGNAL_HPP
#define RQCELS_SIGNAL_HPP

#include "rqcels/spectral.hpp"

namespace rqcels {

/// Global depolarizing noise: weight exp(-alpha |t|) on the ideal channel.
/// The maximally mixed remainder has zero expectation for every +/-1
/// ancilla observable, so it never shows up in the closed forms below.
class GlobalDepolarizing {
   public:
    explicit GlobalDepolarizing(double alpha = 0.0);
    double alpha() const { return alpha_; }
    double survival(double t) const;

   private:
    double alpha_;
};

/// sum_m p_m exp(-i lambda_m t), i.e. <psi| exp(-i t H) |psi>.
Complex ideal_signal(const SpectralModel& model, double t);

/// exp(-alpha |t|) * ideal_signal(model, t): the mean of the noisy
/// Hadamard-test pair X + iY.
Complex noisy_signal(const SpectralModel& model, const GlobalDepolarizing& noise, double t);

/// Mean of the benchmarking-circuit outcome, exp(-alpha |t|).
double benchmark_expectation(const GlobalDepolarizing& noise, double t);

}  // namespace rqcels

#endif  // RQCELS_SIGNAL_HPP
