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

#ifndef SIDUR_TESTS_SUPPORT_HPP_
#define SIDUR_TESTS_SUPPORT_HPP_

#include <unistd.h>

#include <filesystem>
#include <string>

#include "sidur/model.hpp"
#include "sidur/scenario.hpp"

namespace sidur::testing {

inline ModelParams make_params(double population, double beta, double theta,
                               double gamma = 0.1, double rho = 0.05) {
  ModelParams p;
  p.population = population;
  p.beta = PiecewiseConstantSchedule::constant(beta);
  p.theta = PiecewiseConstantSchedule::constant(theta);
  p.gamma = gamma;
  p.rho = rho;
  return p;
}

// Everyone susceptible except `infected` (and `recovered` already immune).
inline EpidemicState seeded(double population, double infected,
                            double recovered = 0.0) {
  return {population - infected - recovered, infected, 0.0, recovered, 0.0};
}

inline Scenario make_scenario(double population, double beta, double theta,
                              double infected, TestingPolicy policy,
                              double horizon, double dt = 0.05) {
  Scenario s;
  s.label = "test";
  s.params = make_params(population, beta, theta);
  s.init = seeded(population, infected);
  s.policy = std::move(policy);
  s.horizon_days = horizon;
  s.dt = dt;
  return s;
}

// Fresh scratch directory, removed and recreated on each call.
inline std::string scratch_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() /
                   ("sidur_" + name + "_" + std::to_string(::getpid()));
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir.string();
}

inline std::string source_path(const std::string& relative) {
  return std::string(SIDUR_SOURCE_DIR) + "/" + relative;
}

}  // namespace sidur::testing

#endif  // SIDUR_TESTS_SUPPORT_HPP_
