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

#include "sidur/infection_time.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "sidur/errors.hpp"

namespace sidur {

InfectionTimeGrid xi_of_trajectory(const Trajectory& traj) {
  InfectionTimeGrid grid;
  grid.provenance = InfectionTimeGrid::Provenance::kFromTrajectory;
  grid.t_values = traj.times;
  grid.xi_values.resize(traj.size(), 0.0);
  for (std::size_t k = 1; k < traj.size(); ++k) {
    const double h = traj.times[k] - traj.times[k - 1];
    grid.xi_values[k] =
        grid.xi_values[k - 1] +
        0.5 * h * (traj.states[k - 1].infected + traj.states[k].infected);
  }
  return grid;
}

InfectedCurve infected_curve(const Trajectory& traj) {
  std::vector<double> xi = traj.xi;
  std::vector<double> infected = traj.infected();
  return [xi = std::move(xi), infected = std::move(infected)](double x) {
    if (x <= xi.front()) return infected.front();
    if (x >= xi.back()) return infected.back();
    const auto hi = static_cast<std::size_t>(
        std::upper_bound(xi.begin(), xi.end(), x) - xi.begin());
    const std::size_t lo = hi - 1;
    const double span = xi[hi] - xi[lo];
    if (span <= 0.0) return infected[hi];
    const double w = (x - xi[lo]) / span;
    return (1.0 - w) * infected[lo] + w * infected[hi];
  };
}

double trapezoid_quadrature(const std::function<double(double)>& f, double a,
                            double b, const QuadratureOptions& opts) {
  if (b == a) return 0.0;
  long n = std::max(1L, opts.min_intervals);
  double h = (b - a) / static_cast<double>(n);
  double sum = 0.5 * (f(a) + f(b));
  for (long i = 1; i < n; ++i) sum += f(a + static_cast<double>(i) * h);
  double estimate = sum * h;
  while (n < opts.max_intervals) {
    double midpoints = 0.0;
    for (long i = 0; i < n; ++i) {
      midpoints += f(a + (static_cast<double>(i) + 0.5) * h);
    }
    sum += midpoints;
    n *= 2;
    h *= 0.5;
    const double refined = sum * h;
    const double change = std::abs(refined - estimate);
    estimate = refined;
    if (change <= opts.rel_tol * std::abs(refined)) return estimate;
  }
  throw NumericalError("trapezoid quadrature did not converge within " +
                       std::to_string(opts.max_intervals) + " intervals");
}

double t_of_xi(double xi_target, const InfectedCurve& curve,
               const QuadratureOptions& opts) {
  if (xi_target < 0.0) {
    throw ValidationError("infection time must be >= 0");
  }
  if (xi_target == 0.0) return 0.0;
  auto reciprocal = [&curve, xi_target](double xi) {
    const double infected = curve(xi);
    if (!(infected > 0.0)) {
      std::ostringstream os;
      os << "x_I(xi) = " << infected << " <= 0 at xi = " << xi
         << " before reaching xi = " << xi_target;
      throw SingularIntegrand(os.str());
    }
    return 1.0 / infected;
  };
  return trapezoid_quadrature(reciprocal, 0.0, xi_target, opts);
}

ApproxSolutionParams ApproxSolutionParams::from(const EpidemicState& state,
                                                const ModelParams& params,
                                                double t) {
  return {state.susceptible,     state.infected,  state.recovered,
          params.beta.value_at(t), params.gamma,  params.theta.value_at(t),
          params.population};
}

double xS_closed_form(double xi, const ApproxSolutionParams& p) {
  return p.susceptible0 * std::exp(-p.beta / p.population * xi);
}

double xU_closed_form(double xi, const ApproxSolutionParams& p) {
  return p.recovered0 + p.gamma * xi;
}

double xI_approx(double xi, const ApproxSolutionParams& p,
                 double tests_in_xi) {
  if (!(p.theta < 1.0)) {
    throw ValidationError("x_I approximation requires theta < 1");
  }
  return p.infected0 +
         p.susceptible0 * -std::expm1(-p.beta / p.population * xi) -
         p.gamma * xi - tests_in_xi / ((1.0 - p.theta) * p.population);
}

std::vector<double> tests_in_xi(const Trajectory& traj) {
  std::vector<double> out(traj.size(), 0.0);
  for (std::size_t k = 1; k < traj.size(); ++k) {
    // u is constant over the step, so u * (xi_k - xi_{k-1}) is exact given xi.
    out[k] = out[k - 1] + traj.u_applied[k - 1] * (traj.xi[k] - traj.xi[k - 1]);
  }
  return out;
}

std::optional<std::string> approximation_warning(const Trajectory& traj) {
  const double floor = 0.9 * traj.population;
  for (std::size_t k = 0; k < traj.size(); ++k) {
    const auto& s = traj.states[k];
    if (s.susceptible + s.recovered < floor) {
      std::ostringstream os;
      os << "x_S + x_U fell below 0.9 N at t = " << traj.times[k]
         << "; the x_T ~ (1 - theta) N approximation is degraded";
      return os.str();
    }
  }
  return std::nullopt;
}

ApproxEvaluation xI_approx_checked(double xi, const ApproxSolutionParams& p,
                                   double tests_in_xi,
                                   const Trajectory& companion) {
  return {xI_approx(xi, p, tests_in_xi), approximation_warning(companion)};
}

}  // namespace sidur
