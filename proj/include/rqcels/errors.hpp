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

#ifndef RQCELS_ERRORS_HPP
#define RQCELS_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace rqcels {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Input violates a documented precondition.
class ValidationError : public Error {
   public:
    using Error::Error;
};

/// Problem size exceeds what the dense routines support.
class CapacityError : public Error {
   public:
    using Error::Error;
};

/// Normalization asked for on an operator with zero norm.
class DegenerateScaleError : public Error {
   public:
    using Error::Error;
};

/// Not enough usable data to form an estimate.
class EstimationError : public Error {
   public:
    using Error::Error;
};

/// Linear system too ill-conditioned to solve.
class ConditioningError : public Error {
   public:
    using Error::Error;
};

/// No fidelity parameters satisfy the requested noise strength.
class InfeasibleError : public Error {
   public:
    using Error::Error;
};

/// Numerical routine failed to reach its accuracy target.
class AccuracyError : public Error {
   public:
    using Error::Error;
};

/// atan2 of a zero vector.
class UndefinedAngleError : public Error {
   public:
    using Error::Error;
};

class IoError : public Error {
   public:
    using Error::Error;
};

}  // namespace rqcels

#endif  // RQCELS_ERRORS_HPP
