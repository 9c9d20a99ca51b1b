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

#include "sidur/model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "sidur/errors.hpp"

namespace sidur {

namespace {

bool finite_nonneg(double v) { return std::isfinite(v) && v >= 0.0; }

}  // namespace

void validate_state(const EpidemicState& state, double population) {
  static constexpr const char* kNames[] = {"susceptible", "infected",
                                           "detected", "recovered", "removed"};
  const auto a = state.as_array();
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!finite_nonneg(a[i])) {
      throw ValidationError(std::string("initial state: ") + kNames[i] +
                            " must be finite and >= 0");
    }
  }
  if (std::abs(state.total() - population) > 1e-9 * population) {
    std::ostringstream os;
    os.precision(17);
    os << "initial state sums to " << state.total() << " but N = "
       << population;
    throw ValidationError(os.str());
  }
}

long snap_to_step(double t, double dt) {
  return static_cast<long>(std::llround(t / dt));
}

// ---------------------------------------------------------------------------

PiecewiseConstantSchedule::PiecewiseConstantSchedule(
    std::vector<double> breakpoints, std::vector<double> values)
    : breakpoints_(std::move(breakpoints)), values_(std::move(values)) {
  if (breakpoints_.empty()) {
    throw ValidationError("schedule: at least one interval is required");
  }
  if (breakpoints_.size() != values_.size()) {
    throw ValidationError(
        "schedule: breakpoints and values must have equal length");
  }
  if (breakpoints_.front() != 0.0) {
    throw ValidationError("schedule: first breakpoint must be day 0");
  }
  for (std::size_t i = 1; i < breakpoints_.size(); ++i) {
    if (!(breakpoints_[i] > breakpoints_[i - 1]) ||
        !std::isfinite(breakpoints_[i])) {
      throw ValidationError("schedule: breakpoints must strictly increase");
    }
  }
  for (double v : values_) {
    if (!finite_nonneg(v)) {
      throw ValidationError("schedule: values must be finite and >= 0");
    }
  }
}

PiecewiseConstantSchedule PiecewiseConstantSchedule::constant(double value) {
  return PiecewiseConstantSchedule({0.0}, {value});
}

std::size_t PiecewiseConstantSchedule::index_at(double t) const {
  auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), t);
  if (it == breakpoints_.begin()) return 0;
  return static_cast<std::size_t>(it - breakpoints_.begin()) - 1;
}

double PiecewiseConstantSchedule::value_at(double t) const {
  return values_[index_at(t)];
}

double PiecewiseConstantSchedule::value_at_step(long k, double dt) const {
  std::size_t idx = 0;
  for (std::size_t i = 1; i < breakpoints_.size(); ++i) {
    if (snap_to_step(breakpoints_[i], dt) <= k) idx = i;
  }
  return values_[idx];
}

bool PiecewiseConstantSchedule::is_non_increasing_from(double t) const {
  for (std::size_t i = index_at(t) + 1; i < values_.size(); ++i) {
    if (values_[i] > values_[i - 1]) return false;
  }
  return true;
}

bool PiecewiseConstantSchedule::is_non_decreasing_from(double t) const {
  for (std::size_t i = index_at(t) + 1; i < values_.size(); ++i) {
    if (values_[i] < values_[i - 1]) return false;
  }
  return true;
}

PiecewiseConstantSchedule PiecewiseConstantSchedule::frozen_from(
    double t) const {
  const std::size_t last = index_at(t);
  std::vector<double> b(breakpoints_.begin(),
                        breakpoints_.begin() + static_cast<long>(last) + 1);
  std::vector<double> v(values_.begin(),
                        values_.begin() + static_cast<long>(last) + 1);
  return PiecewiseConstantSchedule(std::move(b), std::move(v));
}

void ModelParams::validate() const {
  if (!(population > 0.0) || !std::isfinite(population)) {
    throw ValidationError("population N must be > 0");
  }
  if (!(gamma > 0.0) || !std::isfinite(gamma)) {
    throw ValidationError("gamma must be > 0");
  }
  if (!(rho > 0.0) || !std::isfinite(rho)) {
    throw ValidationError("rho must be > 0");
  }
  for (double th : theta.values()) {
    if (th > 1.0) throw ValidationError("theta values must lie in [0, 1]");
  }
}

// ---------------------------------------------------------------------------

double testable_population(const EpidemicState& state, double theta) {
  return state.infected +
         (1.0 - theta) * (state.susceptible + state.recovered);
}

double detection_rate(const EpidemicState& state, double theta,
                      double tests_per_day) {
  if (state.infected <= 0.0 || tests_per_day <= 0.0) return 0.0;
  const double xt = testable_population(state, theta);
  if (!(xt > 0.0)) {
    throw DegenerateTestable(
        "testable population is zero while tests are performed");
  }
  return tests_per_day * state.infected / xt;
}

EpidemicState derivatives(const EpidemicState& state,
                          const StepCoefficients& c) {
  const double infection =
      c.beta * state.susceptible * state.infected / c.population;
  const double detection = detection_rate(state, c.theta, c.tests_per_day);
  const double recovery = c.gamma * state.infected;
  const double removal = c.rho * state.detected;
  return {
      -infection,
      infection - detection - recovery,
      detection - removal,
      recovery,
      removal,
  };
}

EpidemicState derivatives(const EpidemicState& state,
                          const ModelParams& params, double tests_per_day,
                          double t) {
  const StepCoefficients c{params.beta.value_at(t), params.theta.value_at(t),
                           params.gamma,           params.rho,
                           params.population,      tests_per_day};
  return derivatives(state, c);
}

double effective_R(const EpidemicState& state, const StepCoefficients& c) {
  double per_capita_testing = 0.0;
  if (c.tests_per_day > 0.0) {
    const double xt = testable_population(state, c.theta);
    if (!(xt > 0.0)) {
      throw DegenerateTestable(
          "testable population is zero while tests are performed");
    }
    per_capita_testing = c.tests_per_day / xt;
  }
  return c.beta / (per_capita_testing + c.gamma) * state.susceptible /
         c.population;
}

double effective_R(const EpidemicState& state, const ModelParams& params,
                   double tests_per_day, double t) {
  const StepCoefficients c{params.beta.value_at(t), params.theta.value_at(t),
                           params.gamma,           params.rho,
                           params.population,      tests_per_day};
  return effective_R(state, c);
}

double approximate_R0(const ModelParams& params,
                      double initial_tests_per_day) {
  const double theta = params.theta.value_at(0.0);
  const double testing =
      theta < 1.0
          ? initial_tests_per_day / ((1.0 - theta) * params.population)
          : 0.0;
  return params.beta.value_at(0.0) / (testing + params.gamma);
}

// ---------------------------------------------------------------------------

TestingPolicy::TestingPolicy(Variant v) : variant_(std::move(v)) {}

TestingPolicy TestingPolicy::constant(double rate, double horizon_day) {
  if (!finite_nonneg(rate) || !finite_nonneg(horizon_day)) {
    throw ValidationError("constant policy: rate and horizon must be >= 0");
  }
  return TestingPolicy(Constant{rate, horizon_day});
}

TestingPolicy TestingPolicy::series(std::vector<double> daily_rates) {
  for (std::size_t k = 0; k < daily_rates.size(); ++k) {
    if (!finite_nonneg(daily_rates[k])) {
      throw ValidationError("series policy: day " + std::to_string(k) +
                            " rate must be finite and >= 0");
    }
  }
  return TestingPolicy(Series{std::move(daily_rates)});
}

TestingPolicy TestingPolicy::best_from(double t_star, double rate,
                                       TestingPolicy prior) {
  if (!finite_nonneg(rate) || !finite_nonneg(t_star)) {
    throw ValidationError("best-from policy: t_star and rate must be >= 0");
  }
  return TestingPolicy(BestFrom{
      t_star, rate, std::make_shared<const TestingPolicy>(std::move(prior))});
}

namespace {

// Last day j whose snapped start step is <= k.
long day_of_step(long k, double dt) {
  long j = static_cast<long>(std::floor((static_cast<double>(k) + 0.5) * dt));
  while (snap_to_step(static_cast<double>(j + 1), dt) <= k) ++j;
  while (j > 0 && snap_to_step(static_cast<double>(j), dt) > k) --j;
  return j;
}

}  // namespace

double TestingPolicy::rate_at(double t) const {
  return std::visit(
      [t](const auto& p) -> double {
        using P = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<P, Zero>) {
          return 0.0;
        } else if constexpr (std::is_same_v<P, Constant>) {
          return (t >= 0.0 && t <= p.horizon_day) ? p.rate : 0.0;
        } else if constexpr (std::is_same_v<P, Series>) {
          if (t < 0.0) return 0.0;
          const auto day = static_cast<std::size_t>(std::floor(t));
          return day < p.daily_rates.size() ? p.daily_rates[day] : 0.0;
        } else {
          return t >= p.t_star ? p.rate : p.prior->rate_at(t);
        }
      },
      variant_);
}

double TestingPolicy::rate_at_step(long k, double dt) const {
  return std::visit(
      [k, dt](const auto& p) -> double {
        using P = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<P, Zero>) {
          return 0.0;
        } else if constexpr (std::is_same_v<P, Constant>) {
          return k < snap_to_step(p.horizon_day, dt) ? p.rate : 0.0;
        } else if constexpr (std::is_same_v<P, Series>) {
          const auto day = static_cast<std::size_t>(day_of_step(k, dt));
          return day < p.daily_rates.size() ? p.daily_rates[day] : 0.0;
        } else {
          return k >= snap_to_step(p.t_star, dt) ? p.rate
                                                 : p.prior->rate_at_step(k, dt);
        }
      },
      variant_);
}

}  // namespace sidur
