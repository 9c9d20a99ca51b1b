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

#include "sidur/scenario.hpp"

#include <cmath>

#include "sidur/errors.hpp"

namespace sidur {

void Scenario::validate() const {
  params.validate();
  validate_state(init, params.population);
  if (!(horizon_days >= 1.0) || !std::isfinite(horizon_days)) {
    throw ValidationError("scenario horizon must be >= 1 day");
  }
  if (!(dt > 0.0) || dt > horizon_days) {
    throw ValidationError("scenario dt must lie in (0, horizon]");
  }
}

Trajectory Scenario::simulate() const {
  validate();
  return integrate(init, params, policy, horizon_days, dt);
}

Scenario Scenario::with_policy(TestingPolicy p) const {
  Scenario out = *this;
  out.policy = std::move(p);
  return out;
}

}  // namespace sidur
