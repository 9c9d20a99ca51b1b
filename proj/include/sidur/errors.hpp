// Copyright 2026 The sidur Authors
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

#ifndef SIDUR_ERRORS_HPP_
#define SIDUR_ERRORS_HPP_

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace sidur {

// Broad failure classes. The CLI maps each one to its own exit code.
enum class ErrorClass { kValidation, kNumerical, kIo };

class Error : public std::runtime_error {
 public:
  Error(ErrorClass error_class, const std::string& what)
      : std::runtime_error(what), error_class_(error_class) {}
  ErrorClass error_class() const { return error_class_; }

 private:
  ErrorClass error_class_;
};

class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& what)
      : Error(ErrorClass::kValidation, what) {}
};

class NumericalError : public Error {
 public:
  explicit NumericalError(const std::string& what)
      : Error(ErrorClass::kNumerical, what) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error(ErrorClass::kIo, what) {}
};

// x_T vanished while tests are being drawn from it.
class DegenerateTestable : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

// A compartment went below -1e-6 N within one step.
class StepTooLarge : public NumericalError {
 public:
  StepTooLarge(const std::string& what, long step)
      : NumericalError(what), step_(step) {}
  long step() const { return step_; }

 private:
  long step_;
};

// 1/x_I quadrature hit x_I <= 0 before the requested infection time.
class SingularIntegrand : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

// beta increases or theta decreases after the BEST switch-on day.
class MonotonicityViolation : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// R1 < 1: testing alone keeps x_I falling, so there is no first peak.
class NoFirstPeak : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// The COST residual has no single sign change over the admissible rates.
class NoBracket : public NumericalError {
 public:
  NoBracket(const std::string& what,
            std::vector<std::pair<double, double>> residual_curve)
      : NumericalError(what), residual_curve_(std::move(residual_curve)) {}
  // (rate, residual) pairs from the bracket scan.
  const std::vector<std::pair<double, double>>& residual_curve() const {
    return residual_curve_;
  }

 private:
  std::vector<std::pair<double, double>> residual_curve_;
};

class InsufficientOverlap : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

}  // namespace sidur

#endif  // SIDUR_ERRORS_HPP_
