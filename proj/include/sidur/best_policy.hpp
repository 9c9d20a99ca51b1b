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

// Best-effort strategy for testing (BEST): the smallest constant testing
// rate which, switched on at day t*, stops x_I from growing right away.

#ifndef SIDUR_BEST_POLICY_HPP_
#define SIDUR_BEST_POLICY_HPP_

#include <vector>

#include "sidur/integrate.hpp"
#include "sidur/model.hpp"
#include "sidur/scenario.hpp"

namespace sidur {

// x_T * max(beta x_S / N - gamma, 0), in tests/day.
double c_star(const EpidemicState& state, double beta, double theta,
              double gamma, double population);

// beta x_S / N - u / x_T - gamma; x_I' = growth_exponent * x_I.
double growth_exponent(const EpidemicState& state, double beta, double theta,
                       double gamma, double population, double tests_per_day);

struct BestOptions {
  // Hold beta at its t* value for the rest of the run instead of following
  // the scenario's schedule.
  bool freeze_beta = false;
};

struct BestResult {
  double t_star = 0.0;  // snapped to the step grid
  double c_star = 0.0;
  double phi_at_tstar = 0.0;  // growth exponent with u = c_star
  // Scenario policy before t*, c_star from t* on. When c_star is 0 the
  // scenario policy is kept throughout.
  Trajectory trajectory;
  double peak_infected = 0.0;
  double peak_day = 0.0;
};

// Throws MonotonicityViolation unless beta is non-increasing (or frozen) and
// theta non-decreasing from t*.
BestResult apply_best(const Scenario& scenario, double t_star,
                      const BestOptions& options = {});

// Scenario policy before t*, constant `rate` afterwards. Used for the
// minimality counterfactuals around c_star.
Trajectory apply_constant_from(const Scenario& scenario, double t_star,
                               double rate, const BestOptions& options = {});

// State, beta and theta at the snapped t*, under the scenario policy.
struct SwitchPoint {
  double t_star = 0.0;
  EpidemicState state;
  double beta = 0.0;
  double theta = 0.0;
};
SwitchPoint state_at(const Scenario& scenario, double t_star);

struct BestSweepPoint {
  double t_star = 0.0;
  double c_star = 0.0;
  double peak_infected = 0.0;
  double peak_day = 0.0;
};

// One apply_best per candidate day in [from_day, to_day], every step_days.
// Candidates run concurrently; results come back in day order.
std::vector<BestSweepPoint> best_sweep(const Scenario& scenario,
                                       double from_day, double to_day,
                                       double step_days,
                                       const BestOptions& options = {});

}  // namespace sidur

#endif  // SIDUR_BEST_POLICY_HPP_
