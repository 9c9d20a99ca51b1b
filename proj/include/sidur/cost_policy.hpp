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

// Constant optimal strategy for testing (COST).
//
// A stockpile of r_max tests is spent at a constant rate C on [0, T] with
// T = r_max / C. In infection time, x_I has one peak while tests last
// (testing branch) and a second one after the stockpile runs out at xi = Xi
// (post-testing branch). The optimal C equalises the two peaks:
//
//   testing branch:  x_I^0 + x_S^0 (1 - e^{-beta xi / N}) - (k + gamma) xi
//   post branch:     x_I^0 + x_S^0 (1 - e^{-beta xi / N}) - gamma xi - k Xi
//
// with k = C / ((1 - theta) N). Xi solves  integral_0^Xi d(xi)/x_I = T  on
// the testing branch, and peak equality gives the closed form
//
//   Xi_opt = (N / beta) (1 + ln R1 - R1 / (R2 - R1) ln(R2 / R1)).
//
// C is the root of Xi(C) - Xi_opt(C).

#ifndef SIDUR_COST_POLICY_HPP_
#define SIDUR_COST_POLICY_HPP_

#include <vector>

#include "sidur/model.hpp"
#include "sidur/scenario.hpp"

namespace sidur {

class CostProblem {
 public:
  // beta and theta are read at t = 0 for the analytic solution; `params`
  // is kept whole for the full-ODE oracle. Throws ValidationError unless
  // r_max > 0, theta < 1 and R2 > 1.
  CostProblem(double r_max, ModelParams params, EpidemicState init);

  // When `constant_coefficients` is set, beta and theta are pinned at their
  // day-0 values for the oracle too.
  static CostProblem from_scenario(const Scenario& scenario, double r_max,
                                   bool constant_coefficients = true);

  double r_max() const { return r_max_; }
  const ModelParams& params() const { return params_; }
  const EpidemicState& init() const { return init_; }
  double susceptible0() const { return init_.susceptible; }
  double infected0() const { return init_.infected; }
  double beta() const { return beta_; }
  double theta() const { return theta_; }
  double gamma() const { return params_.gamma; }
  double population() const { return params_.population; }

  // k = C / ((1 - theta) N), people removed per unit infection time.
  double removal_per_xi(double rate) const;
  // Largest admissible rate: R1 = 1 there.
  double max_admissible_rate() const;

 private:
  double r_max_;
  ModelParams params_;
  EpidemicState init_;
  double beta_;
  double theta_;
};

struct ReproductionNumbers {
  double r1 = 0.0;  // during testing
  double r2 = 0.0;  // after the stockpile is exhausted
};
ReproductionNumbers reproduction_numbers(const CostProblem& prob, double rate);

struct PeakLocations {
  double xi_p1 = 0.0;
  double xi_p2 = 0.0;
};
// (N / beta) ln R1 and (N / beta) ln R2. Throws NoFirstPeak if R1 < 1.
PeakLocations peak_locations(const CostProblem& prob, double rate);

// Piecewise x_I(xi) for a stockpile exhausted at `exhaustion_xi`.
double infected_in_xi(const CostProblem& prob, double rate,
                      double exhaustion_xi, double xi);

struct PeakValues {
  double peak1 = 0.0;
  double peak2 = 0.0;
};
// Maxima of the piecewise x_I before and after Xi: the first at xi_p1, the
// second at xi_p2, or at Xi itself when tests outlast xi_p2. Requires
// exhaustion_xi >= xi_p1.
PeakValues peak_values(const CostProblem& prob, double rate,
                       double exhaustion_xi);
// x_I^0 + x_S^0 (1 - 1/R - ln(R)/R), minus k Xi for the second peak.
PeakValues peak_values_closed_form(const CostProblem& prob, double rate,
                                   double exhaustion_xi);

// Below this many people x_I counts as extinct for the exhaustion solve.
inline constexpr double kExtinctionLevel = 1.0;

struct Exhaustion {
  double xi = 0.0;
  // Tests outlast the epidemic: x_I reaches the extinction level before the
  // stockpile is spent. `xi` is then the extinction point.
  bool extinguished = false;
};

// integral_0^xi d(eta) / x_I(eta) on the testing branch.
double exhaustion_integral(const CostProblem& prob, double rate, double xi);

// Solves exhaustion_integral(Xi) = r_max / rate.
Exhaustion exhaustion_point(const CostProblem& prob, double rate);

// Closed-form Xi at which the two peaks are equal. Requires R2 > R1 >= 1.
double optimality_xi(const CostProblem& prob, double rate);

struct CostSolution {
  double rate = 0.0;        // C, tests/day
  double horizon_day = 0.0;  // T = r_max / C
  double exhaustion_xi = 0.0;
  double xi_p1 = 0.0;
  double xi_p2 = 0.0;
  double r1 = 0.0;
  double r2 = 0.0;
  double peak1 = 0.0;
  double peak2 = 0.0;
  double residual = 0.0;  // Xi(C) - Xi_opt(C)
  bool extinguished = false;
};

struct CostSolveOptions {
  double rel_tol = 1e-9;  // bisection stop, relative to C
  int scan_points = 160;  // geometric bracket scan
};

// Throws NoBracket unless the residual changes sign exactly once across
// the admissible rates, and also when tests outlast the epidemic at the
// crossing.
CostSolution solve_cost(const CostProblem& prob,
                        const CostSolveOptions& options = {});

// Rate grid spaced by a constant ratio, lo and hi included.
std::vector<double> geometric_grid(double lo, double hi, double ratio);

// Lower end of the bracket scan: r_max over five times the length of the
// untested epidemic wave.
double bracket_floor(const CostProblem& prob);

struct OracleResult {
  double best_rate = 0.0;
  std::size_t best_index = 0;
  std::vector<double> rates;
  std::vector<double> peak_infected;  // max x_I over both phases
};

// Full-ODE minimax: simulate Constant{C, r_max / C} for every C in the grid
// until x_I can no longer grow after the stockpile is spent, and return the
// rate with the lowest peak.
OracleResult cost_oracle(const CostProblem& prob,
                         const std::vector<double>& rates,
                         double dt = kDefaultStepDays);

// Two-stage oracle over the admissible rates: a coarse geometric grid, then
// a fine one spanning one coarse step either side of the coarse minimum.
// Returns both grids merged in increasing rate order.
OracleResult cost_oracle_search(const CostProblem& prob,
                                double coarse_ratio = 1.05,
                                double fine_ratio = 1.005,
                                double dt = kDefaultStepDays);

// Peak of x_I over a full-ODE COST run at one rate.
double cost_run_peak(const CostProblem& prob, double rate,
                     double dt = kDefaultStepDays);

}  // namespace sidur

#endif  // SIDUR_COST_POLICY_HPP_
