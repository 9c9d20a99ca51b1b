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

#ifndef SIDUR_INTEGRATE_HPP_
#define SIDUR_INTEGRATE_HPP_

#include <functional>
#include <vector>

#include "sidur/model.hpp"

namespace sidur {

inline constexpr double kDefaultStepDays = 0.05;

// A negative compartment set to zero after a step. The same mass is taken
// from the largest compartment so the total stays N.
struct ClampEvent {
  long step = 0;
  int compartment = 0;  // index into EpidemicState::as_array()
  double amount = 0.0;  // people added back
};

struct Trajectory {
  double dt = kDefaultStepDays;
  double population = 0.0;
  double gamma = 0.0;
  double rho = 0.0;
  std::vector<double> times;
  std::vector<EpidemicState> states;
  // Coefficients of the step starting at each grid point. The final point
  // repeats the rule for one more step.
  std::vector<double> u_applied;
  std::vector<double> beta;
  std::vector<double> theta;
  // Measured outputs.
  std::vector<double> y1;  // x_D + x_R
  std::vector<double> y2;  // x_R
  std::vector<double> y3;  // u x_I / x_T
  std::vector<double> r_eff;
  // Infection time, integrated alongside the state (order 4).
  std::vector<double> xi;
  std::vector<ClampEvent> clamps;
  // max_k |sum(state_k) - N|
  double max_conservation_error = 0.0;
  // Smallest compartment value seen before clamping.
  double min_preclamp_value = 0.0;

  std::size_t size() const { return times.size(); }
  std::vector<double> infected() const;
  StepCoefficients coefficients(std::size_t k) const;
};

struct MeasuredOutputs {
  std::vector<double> y1;
  std::vector<double> y2;
  std::vector<double> y3;
};

// Return true to stop after the current grid point.
using StopCondition =
    std::function<bool(long step, double t, const EpidemicState& state)>;

// Classical fixed-step RK4 over [0, horizon]. beta, theta and u are held at
// their left values over each step.
Trajectory integrate(const EpidemicState& init, const ModelParams& params,
                     const TestingPolicy& policy, double horizon_days,
                     double dt = kDefaultStepDays,
                     const StopCondition& stop = {});

MeasuredOutputs outputs(const Trajectory& traj);

}  // namespace sidur

#endif  // SIDUR_INTEGRATE_HPP_
