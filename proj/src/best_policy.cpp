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

#include "sidur/best_policy.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "parallel.hpp"
#include "sidur/errors.hpp"

namespace sidur {

double c_star(const EpidemicState& state, double beta, double theta,
              double gamma, double population) {
  const double excess = beta / population * state.susceptible - gamma;
  if (!(excess > 0.0)) return 0.0;
  return testable_population(state, theta) * excess;
}

double growth_exponent(const EpidemicState& state, double beta, double theta,
                       double gamma, double population, double tests_per_day) {
  double testing = 0.0;
  if (tests_per_day > 0.0) {
    const double xt = testable_population(state, theta);
    if (!(xt > 0.0)) {
      throw DegenerateTestable(
          "testable population is zero while tests are performed");
    }
    testing = tests_per_day / xt;
  }
  return beta * state.susceptible / population - testing - gamma;
}

namespace {

double snapped_t_star(const Scenario& scenario, double t_star) {
  if (!(t_star >= 0.0) || !(t_star < scenario.horizon_days)) {
    std::ostringstream os;
    os << "t* = " << t_star << " must lie in [0, " << scenario.horizon_days
       << ")";
    throw ValidationError(os.str());
  }
  return static_cast<double>(snap_to_step(t_star, scenario.dt)) * scenario.dt;
}

// Parameters in force after t*, checked against the monotonicity the
// suppression guarantee needs.
ModelParams params_after(const Scenario& scenario, double t_snap,
                         const BestOptions& options) {
  ModelParams params = scenario.params;
  if (options.freeze_beta) {
    params.beta = params.beta.frozen_from(t_snap);
  }
  if (!params.beta.is_non_increasing_from(t_snap)) {
    std::ostringstream os;
    os << "beta increases after t* = " << t_snap
       << "; BEST needs a non-increasing beta (or freeze-beta)";
    throw MonotonicityViolation(os.str());
  }
  if (!params.theta.is_non_decreasing_from(t_snap)) {
    std::ostringstream os;
    os << "theta decreases after t* = " << t_snap
       << "; BEST needs a non-decreasing theta";
    throw MonotonicityViolation(os.str());
  }
  return params;
}

}  // namespace

SwitchPoint state_at(const Scenario& scenario, double t_star) {
  scenario.validate();
  const double t_snap = snapped_t_star(scenario, t_star);
  const long m = snap_to_step(t_snap, scenario.dt);
  SwitchPoint out;
  out.t_star = t_snap;
  out.state = m == 0 ? scenario.init
                     : integrate(scenario.init, scenario.params,
                                 scenario.policy, t_snap, scenario.dt)
                           .states.back();
  out.beta = scenario.params.beta.value_at_step(m, scenario.dt);
  out.theta = scenario.params.theta.value_at_step(m, scenario.dt);
  return out;
}

Trajectory apply_constant_from(const Scenario& scenario, double t_star,
                               double rate, const BestOptions& options) {
  scenario.validate();
  const double t_snap = snapped_t_star(scenario, t_star);
  const ModelParams params = params_after(scenario, t_snap, options);
  return integrate(scenario.init, params,
                   TestingPolicy::best_from(t_snap, rate, scenario.policy),
                   scenario.horizon_days, scenario.dt);
}

BestResult apply_best(const Scenario& scenario, double t_star,
                      const BestOptions& options) {
  const SwitchPoint at = state_at(scenario, t_star);
  const ModelParams params = params_after(scenario, at.t_star, options);
  const double gamma = params.gamma;
  const double n = params.population;

  BestResult result;
  result.t_star = at.t_star;
  result.c_star = c_star(at.state, at.beta, at.theta, gamma, n);
  result.phi_at_tstar =
      growth_exponent(at.state, at.beta, at.theta, gamma, n, result.c_star);
  if (result.c_star > 0.0) {
    result.trajectory = integrate(
        scenario.init, params,
        TestingPolicy::best_from(at.t_star, result.c_star, scenario.policy),
        scenario.horizon_days, scenario.dt);
  } else {
    result.trajectory = scenario.simulate();
  }
  const auto& states = result.trajectory.states;
  const auto peak = std::max_element(
      states.begin(), states.end(),
      [](const auto& a, const auto& b) { return a.infected < b.infected; });
  result.peak_infected = peak->infected;
  result.peak_day =
      result.trajectory.times[static_cast<std::size_t>(peak - states.begin())];
  return result;
}

std::vector<BestSweepPoint> best_sweep(const Scenario& scenario,
                                       double from_day, double to_day,
                                       double step_days,
                                       const BestOptions& options) {
  if (!(step_days > 0.0) || !(to_day >= from_day)) {
    throw ValidationError("sweep needs from <= to and step > 0");
  }
  if (from_day < 0.0 || to_day >= scenario.horizon_days) {
    throw ValidationError("sweep range must lie within the scenario horizon");
  }
  const auto count =
      static_cast<std::size_t>(std::floor((to_day - from_day) / step_days +
                                          1e-9)) +
      1;
  std::vector<BestSweepPoint> out(count);
  detail::parallel_for(count, [&](std::size_t i) {
    const double t = from_day + static_cast<double>(i) * step_days;
    const BestResult r = apply_best(scenario, t, options);
    out[i] = {r.t_star, r.c_star, r.peak_infected, r.peak_day};
  });
  return out;
}

}  // namespace sidur
