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

#include "rqcels/signal.hpp"

#include <cmath>

#include "rqcels/errors.hpp"

namespace rqcels {

GlobalDepolarizing::GlobalDepolarizing(double alpha) : alpha_(alpha) {
    if (!(alpha >= 0.0) || !std::isfinite(alpha)) {
        throw ValidationError("depolarizing rate must be finite and non-negative");
    }
}

double GlobalDepolarizing::survival(double t) const { return std::exp(-alpha_ * std::abs(t)); }

Complex ideal_signal(const SpectralModel& model, double t) {
    const auto lambdas = model.eigenvalues();
    const auto overlaps = model.overlaps();
    Complex sum = 0.0;
    for (std::size_t m = 0; m < lambdas.size(); ++m) {
        if (overlaps[m] == 0.0) continue;
        sum += overlaps[m] * std::polar(1.0, -lambdas[m] * t);
    }
    return sum;
}

Complex noisy_signal(const SpectralModel& model, const GlobalDepolarizing& noise, double t) {
    return noise.survival(t) * ideal_signal(model, t);
}

double benchmark_expectation(const GlobalDepolarizing& noise, double t) { return noise.survival(t); }

}  // namespace rqcels
