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

#include "sidur/integrate.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "sidur/errors.hpp"

namespace sidur {

namespace {

// Five compartments plus infection time.
using Augmented = std::array<double, 6>;

Augmented augmented_rate(const Augmented& y, const StepCoefficients& c) {
  const EpidemicState s{y[0], y[1], y[2], y[3], y[4]};
  const EpidemicState ds = derivatives(s, c);
  return {ds.susceptible, ds.infected, ds.detected,
          ds.recovered,   ds.removed,  s.infected};
}

Augmented axpy(const Augmented& y, double h, const Augmented& k) {
  Augmented out;
  for (std::size_t i = 0; i < y.size(); ++i) out[i] = y[i] + h * k[i];
  return out;
}

Augmented rk4_step(const Augmented& y, const StepCoefficients& c, double dt) {
  const Augmented k1 = augmented_rate(y, c);
  const Augmented k2 = augmented_rate(axpy(y, 0.5 * dt, k1), c);
  const Augmented k3 = augmented_rate(axpy(y, 0.5 * dt, k2), c);
  const Augmented k4 = augmented_rate(axpy(y, dt, k3), c);
  Augmented out;
  for (std::size_t i = 0; i < y.size(); ++i) {
    out[i] = y[i] + dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  }
  return out;
}

StepCoefficients coefficients_for_step(const ModelParams& params,
                                       const TestingPolicy& policy, long k,
                                       double dt) {
  return {params.beta.value_at_step(k, dt),
          params.theta.value_at_step(k, dt),
          params.gamma,
          params.rho,
          params.population,
          policy.rate_at_step(k, dt)};
}

double trajectory_R(const EpidemicState& s, const StepCoefficients& c) {
  if (c.tests_per_day > 0.0 && !(testable_population(s, c.theta) > 0.0)) {
    return 0.0;  // x_T = 0 forces x_S = 0 or x_I = 0; the ratio's limit is 0
  }
  return effective_R(s, c);
}

}  // namespace

std::vector<double> Trajectory::infected() const {
  std::vector<double> out;
  out.reserve(states.size());
  for (const auto& s : states) out.push_back(s.infected);
  return out;
}

StepCoefficients Trajectory::coefficients(std::size_t k) const {
  return {beta[k], theta[k], gamma, rho, population, u_applied[k]};
}

Trajectory integrate(const EpidemicState& init, const ModelParams& params,
                     const TestingPolicy& policy, double horizon_days,
                     double dt, const StopCondition& stop) {
  params.validate();
  validate_state(init, params.population);
  if (!(dt > 0.0) || !std::isfinite(dt)) {
    throw ValidationError("dt must be > 0");
  }
  if (!(horizon_days >= dt) || !std::isfinite(horizon_days)) {
    throw ValidationError("horizon must be >= dt");
  }
  const long steps = snap_to_step(horizon_days, dt);
  const double n = params.population;
  const double tolerance = 1e-6 * n;

  Trajectory traj;
  traj.dt = dt;
  traj.population = n;
  traj.gamma = params.gamma;
  traj.rho = params.rho;
  const auto reserve = static_cast<std::size_t>(steps) + 1;
  traj.times.reserve(reserve);
  traj.states.reserve(reserve);
  traj.u_applied.reserve(reserve);
  traj.beta.reserve(reserve);
  traj.theta.reserve(reserve);
  traj.r_eff.reserve(reserve);
  traj.xi.reserve(reserve);

  Augmented y{init.susceptible, init.infected, init.detected,
              init.recovered,   init.removed,  0.0};
  traj.min_preclamp_value = *std::min_element(y.begin(), y.begin() + 5);

  auto record = [&](long k, const StepCoefficients& c) {
    const EpidemicState s{y[0], y[1], y[2], y[3], y[4]};
    traj.times.push_back(static_cast<double>(k) * dt);
    traj.states.push_back(s);
    traj.u_applied.push_back(c.tests_per_day);
    traj.beta.push_back(c.beta);
    traj.theta.push_back(c.theta);
    traj.r_eff.push_back(trajectory_R(s, c));
    traj.xi.push_back(y[5]);
    traj.max_conservation_error =
        std::max(traj.max_conservation_error, std::abs(s.total() - n));
  };

  StepCoefficients c = coefficients_for_step(params, policy, 0, dt);
  record(0, c);
  for (long k = 0; k < steps; ++k) {
    if (stop && stop(k, static_cast<double>(k) * dt, traj.states.back())) {
      break;
    }
    y = rk4_step(y, c, dt);

    const double lowest = *std::min_element(y.begin(), y.begin() + 5);
    traj.min_preclamp_value = std::min(traj.min_preclamp_value, lowest);
    if (lowest < -tolerance) {
      std::ostringstream os;
      os << "step " << k << " (t = " << static_cast<double>(k) * dt
         << ") drove a compartment to " << lowest
         << "; reduce dt";
      throw StepTooLarge(os.str(), k);
    }
    if (lowest < 0.0) {
      for (int i = 0; i < 5; ++i) {
        if (y[i] < 0.0) {
          const double amount = -y[i];
          y[i] = 0.0;
          auto largest = std::max_element(y.begin(), y.begin() + 5);
          *largest -= amount;
          traj.clamps.push_back({k + 1, i, amount});
        }
      }
    }
    c = coefficients_for_step(params, policy, k + 1, dt);
    record(k + 1, c);
  }

  const MeasuredOutputs out = outputs(traj);
  traj.y1 = out.y1;
  traj.y2 = out.y2;
  traj.y3 = out.y3;
  return traj;
}

MeasuredOutputs outputs(const Trajectory& traj) {
  MeasuredOutputs out;
  const std::size_t n = traj.size();
  out.y1.reserve(n);
  out.y2.reserve(n);
  out.y3.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    const EpidemicState& s = traj.states[k];
    out.y1.push_back(s.detected + s.removed);
    out.y2.push_back(s.removed);
    const double xt = testable_population(s, traj.theta[k]);
    out.y3.push_back(s.infected > 0.0 && xt > 0.0
                         ? traj.u_applied[k] * s.infected / xt
                         : 0.0);
  }
  return out;
}

}  // namespace sidur
