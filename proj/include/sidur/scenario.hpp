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

#ifndef SIDUR_SCENARIO_HPP_
#define SIDUR_SCENARIO_HPP_

#include <optional>
#include <string>

#include "sidur/integrate.hpp"
#include "sidur/model.hpp"

namespace sidur {

// Everything needed to reproduce one run.
struct Scenario {
  std::string label;
  ModelParams params;
  EpidemicState init;
  TestingPolicy policy;
  double horizon_days = 0.0;
  double dt = kDefaultStepDays;
  std::optional<std::string> data_ref;    // path to a reported-data CSV
  std::optional<std::string> start_date;  // ISO date of day 0

  void validate() const;
  Trajectory simulate() const;
  Scenario with_policy(TestingPolicy p) const;
};

}  // namespace sidur

#endif  // SIDUR_SCENARIO_HPP_
