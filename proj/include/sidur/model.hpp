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

// The SIDUR compartmental model: susceptible, undetected infected, detected
// infected, unidentified recovered and identified removed populations, with
// the daily testing rate as control input.

#ifndef SIDUR_MODEL_HPP_
#define SIDUR_MODEL_HPP_

#include <array>
#include <memory>
#include <variant>
#include <vector>

namespace sidur {

// Populations in individuals (continuous relaxation).
struct EpidemicState {
  double susceptible = 0.0;  // x_S
  double infected = 0.0;     // x_I, undetected infected
  double detected = 0.0;     // x_D, detected and isolated
  double recovered = 0.0;    // x_U, recovered without detection
  double removed = 0.0;      // x_R, detected then recovered or dead

  double total() const {
    return susceptible + infected + detected + recovered + removed;
  }
  std::array<double, 5> as_array() const {
    return {susceptible, infected, detected, recovered, removed};
  }
  static EpidemicState from_array(const std::array<double, 5>& a) {
    return {a[0], a[1], a[2], a[3], a[4]};
  }
  bool operator==(const EpidemicState&) const = default;
};

// Throws ValidationError unless every compartment is finite and >= 0 and
// the compartments sum to `population` within 1e-9 relative.
void validate_state(const EpidemicState& state, double population);

// Right-continuous step function of time in days. breakpoints[0] must be 0.
class PiecewiseConstantSchedule {
 public:
  PiecewiseConstantSchedule(std::vector<double> breakpoints,
                            std::vector<double> values);
  static PiecewiseConstantSchedule constant(double value);

  double value_at(double t) const;
  // Value on the step [k dt, (k+1) dt) with every breakpoint snapped to the
  // nearest grid point.
  double value_at_step(long k, double dt) const;

  bool is_constant() const { return values_.size() == 1; }
  bool is_non_increasing_from(double t) const;
  bool is_non_decreasing_from(double t) const;
  // Same schedule with every value from `t` onward pinned to value_at(t).
  PiecewiseConstantSchedule frozen_from(double t) const;

  const std::vector<double>& breakpoints() const { return breakpoints_; }
  const std::vector<double>& values() const { return values_; }

 private:
  std::size_t index_at(double t) const;

  std::vector<double> breakpoints_;
  std::vector<double> values_;
};

struct ModelParams {
  double population = 0.0;  // N
  PiecewiseConstantSchedule beta = PiecewiseConstantSchedule::constant(0.0);
  PiecewiseConstantSchedule theta = PiecewiseConstantSchedule::constant(0.0);
  double gamma = 0.0;  // recovery rate, 1/day
  double rho = 0.0;    // removal rate, 1/day

  // Throws ValidationError on N <= 0, gamma <= 0, rho <= 0 or theta outside
  // [0, 1].
  void validate() const;
};

// Coefficients frozen over one integration step.
struct StepCoefficients {
  double beta = 0.0;
  double theta = 0.0;
  double gamma = 0.0;
  double rho = 0.0;
  double population = 0.0;
  double tests_per_day = 0.0;
};

// x_I + (1 - theta)(x_S + x_U): the pool tests are drawn from.
double testable_population(const EpidemicState& state, double theta);

// u x_I / x_T, the number of infected detected per day. Zero when x_I <= 0.
double detection_rate(const EpidemicState& state, double theta,
                      double tests_per_day);

// Time derivative of every compartment, in people/day.
EpidemicState derivatives(const EpidemicState& state,
                          const StepCoefficients& coefficients);
EpidemicState derivatives(const EpidemicState& state,
                          const ModelParams& params, double tests_per_day,
                          double t);

// R(t) = beta / (u / x_T + gamma) * x_S / N.
double effective_R(const EpidemicState& state, const StepCoefficients& c);
double effective_R(const EpidemicState& state, const ModelParams& params,
                   double tests_per_day, double t);

// R0 under x_S(0) ~ N and x_T(0) ~ (1 - theta) N.
double approximate_R0(const ModelParams& params, double initial_tests_per_day);

// The testing-rate control input u(t), tests per day.
class TestingPolicy {
 public:
  struct Zero {};
  // C on [0, T], zero afterwards.
  struct Constant {
    double rate = 0.0;
    double horizon_day = 0.0;
  };
  // daily_rates[k] applies on day [k, k + 1); zero past the end.
  struct Series {
    std::vector<double> daily_rates;
  };
  // `prior` until t_star, then `rate`.
  struct BestFrom {
    double t_star = 0.0;
    double rate = 0.0;
    std::shared_ptr<const TestingPolicy> prior;
  };
  using Variant = std::variant<Zero, Constant, Series, BestFrom>;

  TestingPolicy() : variant_(Zero{}) {}
  static TestingPolicy zero() { return TestingPolicy(Zero{}); }
  static TestingPolicy constant(double rate, double horizon_day);
  static TestingPolicy series(std::vector<double> daily_rates);
  static TestingPolicy best_from(double t_star, double rate,
                                 TestingPolicy prior = TestingPolicy());

  double rate_at(double t) const;
  // Left value on step k, with switch times snapped to the step grid.
  double rate_at_step(long k, double dt) const;

  const Variant& variant() const { return variant_; }

 private:
  explicit TestingPolicy(Variant v);
  Variant variant_;
};

// Snaps a switch time onto the step grid.
long snap_to_step(double t, double dt);

}  // namespace sidur

#endif  // SIDUR_MODEL_HPP_
