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

// Infection time: the coordinate xi with d(xi) = x_I dt. In xi the
// susceptible and unidentified-recovered populations have exact closed
// forms, and x_I has an explicit approximation when x_T ~ (1 - theta) N.

#ifndef SIDUR_INFECTION_TIME_HPP_
#define SIDUR_INFECTION_TIME_HPP_

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "sidur/integrate.hpp"
#include "sidur/model.hpp"

namespace sidur {

struct InfectionTimeGrid {
  enum class Provenance { kFromTrajectory, kAnalytic };
  std::vector<double> xi_values;  // people * day
  std::vector<double> t_values;   // day
  Provenance provenance = Provenance::kFromTrajectory;
};

// Cumulative trapezoid of x_I over the trajectory grid.
InfectionTimeGrid xi_of_trajectory(const Trajectory& traj);

// x_I as a function of infection time.
using InfectedCurve = std::function<double(double xi)>;

// Piecewise-linear x_I(xi) through the trajectory's (xi, x_I) points, using
// the trajectory's own order-4 infection time.
InfectedCurve infected_curve(const Trajectory& traj);

// Trapezoid quadrature of `f` over [a, b], starting at `min_intervals` and
// doubling until successive estimates agree to `rel_tol`.
struct QuadratureOptions {
  long min_intervals = 10000;
  long max_intervals = 1L << 24;
  double rel_tol = 1e-6;
};
double trapezoid_quadrature(const std::function<double(double)>& f, double a,
                            double b, const QuadratureOptions& opts = {});

// t(xi) = integral of 1 / x_I over [0, xi_target]. Throws SingularIntegrand
// if x_I <= 0 at any quadrature node.
double t_of_xi(double xi_target, const InfectedCurve& curve,
               const QuadratureOptions& opts = {});

struct ApproxSolutionParams {
  double susceptible0 = 0.0;  // x_S^0
  double infected0 = 0.0;     // x_I^0
  double recovered0 = 0.0;    // x_U^0
  double beta = 0.0;
  double gamma = 0.0;
  double theta = 0.0;
  double population = 0.0;

  static ApproxSolutionParams from(const EpidemicState& state,
                                   const ModelParams& params, double t = 0.0);
};

// x_S^0 exp(-beta xi / N). Exact for constant beta.
double xS_closed_form(double xi, const ApproxSolutionParams& p);
// x_U^0 + gamma xi. Exact.
double xU_closed_form(double xi, const ApproxSolutionParams& p);
// x_I^0 + x_S^0 (1 - exp(-beta xi / N)) - gamma xi - tests / ((1 - theta) N),
// where `tests_in_xi` is the integral of u d(xi) over [0, xi]. May be
// negative; callers read <= 0 as extinction.
double xI_approx(double xi, const ApproxSolutionParams& p, double tests_in_xi);

// Running integral of u d(xi) = u x_I dt along a trajectory.
std::vector<double> tests_in_xi(const Trajectory& traj);

// Set when x_S + x_U fell below 0.9 N somewhere in the run, the point where
// x_T ~ (1 - theta) N stops being a safe premise.
std::optional<std::string> approximation_warning(const Trajectory& traj);

struct ApproxEvaluation {
  double value = 0.0;
  std::optional<std::string> warning;
};
ApproxEvaluation xI_approx_checked(double xi, const ApproxSolutionParams& p,
                                   double tests_in_xi,
                                   const Trajectory& companion);

}  // namespace sidur

#endif  // SIDUR_INFECTION_TIME_HPP_
