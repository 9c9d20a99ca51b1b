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

#include "sidur/cost_policy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "parallel.hpp"
#include "sidur/errors.hpp"
#include "sidur/integrate.hpp"

namespace sidur {

CostProblem::CostProblem(double r_max, ModelParams params, EpidemicState init)
    : r_max_(r_max), params_(std::move(params)), init_(init) {
  params_.validate();
  validate_state(init_, params_.population);
  if (!(r_max_ > 0.0) || !std::isfinite(r_max_)) {
    throw ValidationError("r_max must be > 0");
  }
  if (!(init_.infected > 0.0)) {
    throw ValidationError("COST needs x_I(0) > 0");
  }
  beta_ = params_.beta.value_at(0.0);
  theta_ = params_.theta.value_at(0.0);
  if (!(theta_ < 1.0)) {
    throw ValidationError("COST needs theta < 1 at day 0");
  }
  const double r2 =
      init_.susceptible * beta_ / (params_.gamma * params_.population);
  if (!(r2 > 1.0)) {
    std::ostringstream os;
    os << "R2 = " << r2 << " <= 1: the epidemic does not grow, COST is vacuous";
    throw ValidationError(os.str());
  }
}

CostProblem CostProblem::from_scenario(const Scenario& scenario, double r_max,
                                       bool constant_coefficients) {
  ModelParams params = scenario.params;
  if (constant_coefficients) {
    params.beta =
        PiecewiseConstantSchedule::constant(params.beta.value_at(0.0));
    params.theta =
        PiecewiseConstantSchedule::constant(params.theta.value_at(0.0));
  }
  return CostProblem(r_max, std::move(params), scenario.init);
}

double CostProblem::removal_per_xi(double rate) const {
  return rate / ((1.0 - theta_) * params_.population);
}

double CostProblem::max_admissible_rate() const {
  return (1.0 - theta_) *
         (init_.susceptible * beta_ - params_.gamma * params_.population);
}

ReproductionNumbers reproduction_numbers(const CostProblem& prob,
                                         double rate) {
  const double force = prob.susceptible0() * prob.beta();
  const double gn = prob.gamma() * prob.population();
  return {force / (rate / (1.0 - prob.theta()) + gn), force / gn};
}

PeakLocations peak_locations(const CostProblem& prob, double rate) {
  const ReproductionNumbers r = reproduction_numbers(prob, rate);
  if (r.r1 < 1.0) {
    std::ostringstream os;
    os << "R1 = " << r.r1 << " < 1 at C = " << rate
       << ": x_I falls throughout the testing phase";
    throw NoFirstPeak(os.str());
  }
  const double scale = prob.population() / prob.beta();
  return {scale * std::log(r.r1), scale * std::log(r.r2)};
}

namespace {

// Shared part of both branches: x_I^0 + x_S^0 (1 - e^{-b xi}) - gamma xi.
double untested_part(const CostProblem& prob, double xi) {
  return prob.infected0() +
         prob.susceptible0() *
             -std::expm1(-prob.beta() / prob.population() * xi) -
         prob.gamma() * xi;
}

double testing_branch(const CostProblem& prob, double rate, double xi) {
  return untested_part(prob, xi) - prob.removal_per_xi(rate) * xi;
}

// Where the testing branch peaks (0 if it only falls).
double testing_branch_peak(const CostProblem& prob, double rate) {
  const double r1 = reproduction_numbers(prob, rate).r1;
  return r1 > 1.0 ? prob.population() / prob.beta() * std::log(r1) : 0.0;
}

double extinction_level(const CostProblem& prob) {
  return std::min(kExtinctionLevel, 0.5 * prob.infected0());
}

// First xi past the peak where the concave testing branch drops to `level`.
double branch_crossing(const CostProblem& prob, double rate, double level) {
  double lo = testing_branch_peak(prob, rate);
  const double slope =
      prob.removal_per_xi(rate) + prob.gamma();  // asymptotic decay rate
  double hi = lo + std::max({lo, prob.infected0() / slope, 1.0});
  while (testing_branch(prob, rate, hi) > level) {
    lo = hi;
    hi *= 2.0;
  }
  for (int i = 0; i < 300 && hi - lo > 1e-14 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    (testing_branch(prob, rate, mid) > level ? lo : hi) = mid;
  }
  return lo;
}

}  // namespace

double infected_in_xi(const CostProblem& prob, double rate,
                      double exhaustion_xi, double xi) {
  const double k = prob.removal_per_xi(rate);
  return untested_part(prob, xi) - k * std::min(xi, exhaustion_xi);
}

PeakValues peak_values(const CostProblem& prob, double rate,
                       double exhaustion_xi) {
  const PeakLocations at = peak_locations(prob, rate);
  if (exhaustion_xi < at.xi_p1) {
    std::ostringstream os;
    os << "Xi = " << exhaustion_xi << " precedes the first peak at "
       << at.xi_p1;
    throw ValidationError(os.str());
  }
  const double k = prob.removal_per_xi(rate);
  // Tests that outlast the second peak location leave x_I falling from Xi.
  const double xi2 = std::max(at.xi_p2, exhaustion_xi);
  return {untested_part(prob, at.xi_p1) - k * at.xi_p1,
          untested_part(prob, xi2) - k * exhaustion_xi};
}

PeakValues peak_values_closed_form(const CostProblem& prob, double rate,
                                   double exhaustion_xi) {
  const ReproductionNumbers r = reproduction_numbers(prob, rate);
  const double s0 = prob.susceptible0();
  const double i0 = prob.infected0();
  auto peak = [&](double rr) {
    return i0 + s0 * (1.0 - 1.0 / rr - std::log(rr) / rr);
  };
  return {peak(r.r1),
          peak(r.r2) - prob.removal_per_xi(rate) * exhaustion_xi};
}

double exhaustion_integral(const CostProblem& prob, double rate, double xi) {
  if (xi <= 0.0) return 0.0;
  auto reciprocal = [&](double eta) {
    const double infected = testing_branch(prob, rate, eta);
    if (!(infected > 0.0)) {
      std::ostringstream os;
      os << "x_I(xi) = " << infected << " <= 0 at xi = " << eta;
      throw SingularIntegrand(os.str());
    }
    return 1.0 / infected;
  };
  using Quadrature = boost::math::quadrature::gauss_kronrod<double, 31>;
  constexpr unsigned kMaxDepth = 15;
  constexpr double kTol = 1e-10;
  // Split at the peak so each piece is monotone.
  const double peak = testing_branch_peak(prob, rate);
  if (peak > 0.0 && peak < xi) {
    return Quadrature::integrate(reciprocal, 0.0, peak, kMaxDepth, kTol) +
           Quadrature::integrate(reciprocal, peak, xi, kMaxDepth, kTol);
  }
  return Quadrature::integrate(reciprocal, 0.0, xi, kMaxDepth, kTol);
}

Exhaustion exhaustion_point(const CostProblem& prob, double rate) {
  if (!(rate > 0.0)) throw ValidationError("testing rate C must be > 0");
  const double horizon = prob.r_max() / rate;
  const double stop = branch_crossing(prob, rate, extinction_level(prob));
  const double g_stop = exhaustion_integral(prob, rate, stop);
  if (g_stop <= horizon) return {stop, true};

  // Safeguarded Newton on G(Xi) = T, with G' = 1 / x_I.
  double lo = 0.0;
  double hi = stop;
  double x = std::clamp(horizon * prob.infected0(), 0.0, stop);
  if (x <= lo || x >= hi) x = 0.5 * (lo + hi);
  for (int iter = 0; iter < 200; ++iter) {
    const double residual = exhaustion_integral(prob, rate, x) - horizon;
    if (std::abs(residual) <= 1e-10 * horizon) break;
    (residual < 0.0 ? lo : hi) = x;
    if (hi - lo <= 1e-14 * hi) break;
    double next = x - residual * testing_branch(prob, rate, x);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    x = next;
  }
  return {x, false};
}

double optimality_xi(const CostProblem& prob, double rate) {
  const ReproductionNumbers r = reproduction_numbers(prob, rate);
  if (r.r1 < 1.0) {
    std::ostringstream os;
    os << "R1 = " << r.r1 << " < 1 at C = " << rate;
    throw NoFirstPeak(os.str());
  }
  // R1 / (R2 - R1) ln(R2 / R1) = log1p(d) / d with d = (R2 - R1) / R1.
  const double d = (r.r2 - r.r1) / r.r1;
  const double ratio = d > 1e-8 ? std::log1p(d) / d : 1.0 - 0.5 * d;
  return prob.population() / prob.beta() * (1.0 + std::log(r.r1) - ratio);
}

std::vector<double> geometric_grid(double lo, double hi, double ratio) {
  if (!(lo > 0.0) || !(hi >= lo) || !(ratio > 1.0)) {
    throw ValidationError("geometric grid needs 0 < lo <= hi and ratio > 1");
  }
  const auto steps = static_cast<std::size_t>(
      std::ceil(std::log(hi / lo) / std::log(ratio) - 1e-12));
  std::vector<double> grid;
  grid.reserve(steps + 1);
  for (std::size_t i = 0; i < steps; ++i) {
    grid.push_back(lo * std::pow(ratio, static_cast<double>(i)));
  }
  grid.push_back(hi);
  return grid;
}

double bracket_floor(const CostProblem& prob) {
  const double xi_peak = peak_locations(prob, 0.0).xi_p2;
  const double wave_days = 2.0 * exhaustion_integral(prob, 0.0, xi_peak);
  return prob.r_max() / (5.0 * wave_days);
}

CostSolution solve_cost(const CostProblem& prob,
                        const CostSolveOptions& options) {
  const double c_max = prob.max_admissible_rate();
  double c_lo = bracket_floor(prob);
  const double c_hi = c_max * (1.0 - 1e-6);
  if (!(c_lo < c_hi)) c_lo = 1e-4 * c_max;

  auto residual = [&](double rate) {
    return exhaustion_point(prob, rate).xi - optimality_xi(prob, rate);
  };

  const int n = std::max(options.scan_points, 2);
  std::vector<double> rates(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    rates[static_cast<std::size_t>(i)] =
        c_lo * std::pow(c_hi / c_lo, static_cast<double>(i) / (n - 1));
  }
  std::vector<double> values(rates.size());
  detail::parallel_for(rates.size(),
                       [&](std::size_t i) { values[i] = residual(rates[i]); });

  std::vector<std::size_t> changes;
  for (std::size_t i = 0; i + 1 < values.size(); ++i) {
    if (values[i] == 0.0 || (values[i] > 0.0) != (values[i + 1] > 0.0)) {
      changes.push_back(i);
    }
  }
  std::vector<std::pair<double, double>> curve;
  for (std::size_t i = 0; i < rates.size(); ++i) {
    curve.emplace_back(rates[i], values[i]);
  }
  if (changes.size() != 1) {
    std::ostringstream os;
    os << "COST residual changes sign " << changes.size()
       << " times over C in [" << c_lo << ", " << c_hi
       << "]; expected exactly one (r_max too small or too large for an "
          "interior optimum)";
    throw NoBracket(os.str(), std::move(curve));
  }

  double lo = rates[changes[0]];
  double hi = rates[changes[0] + 1];
  double f_lo = values[changes[0]];
  if (f_lo == 0.0) hi = lo;
  while (hi - lo > options.rel_tol * hi) {
    const double mid = 0.5 * (lo + hi);
    const double f_mid = residual(mid);
    if (f_mid == 0.0) {
      lo = hi = mid;
      break;
    }
    if ((f_mid > 0.0) == (f_lo > 0.0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }

  CostSolution sol;
  sol.rate = 0.5 * (lo + hi);
  sol.horizon_day = prob.r_max() / sol.rate;
  const Exhaustion ex = exhaustion_point(prob, sol.rate);
  sol.exhaustion_xi = ex.xi;
  sol.extinguished = ex.extinguished;
  if (ex.extinguished) {
    std::ostringstream os;
    os << "the COST residual only crosses zero at C = " << sol.rate
       << ", where tests outlast the epidemic; r_max is too large for an "
          "interior optimum";
    throw NoBracket(os.str(), std::move(curve));
  }
  const ReproductionNumbers r = reproduction_numbers(prob, sol.rate);
  sol.r1 = r.r1;
  sol.r2 = r.r2;
  const PeakLocations at = peak_locations(prob, sol.rate);
  sol.xi_p1 = at.xi_p1;
  sol.xi_p2 = at.xi_p2;
  const PeakValues peaks = peak_values(prob, sol.rate, sol.exhaustion_xi);
  sol.peak1 = peaks.peak1;
  sol.peak2 = peaks.peak2;
  sol.residual = sol.exhaustion_xi - optimality_xi(prob, sol.rate);
  return sol;
}

double cost_run_peak(const CostProblem& prob, double rate, double dt) {
  const double horizon = prob.r_max() / rate;
  const ModelParams& params = prob.params();
  // From the last rise in beta on, x_I falls for good once
  // beta x_S / N <= gamma, whatever the testing rate does.
  double settled_from = 0.0;
  const auto& bp = params.beta.breakpoints();
  const auto& bv = params.beta.values();
  for (std::size_t i = bv.size(); i-- > 1;) {
    if (bv[i] > bv[i - 1]) {
      settled_from = bp[i];
      break;
    }
  }
  auto wave_over = [&params, settled_from](long, double t,
                                           const EpidemicState& s) {
    return t >= settled_from &&
           params.beta.value_at(t) * s.susceptible / params.population <=
               params.gamma;
  };
  const double cap = std::max(3.0 * horizon, horizon + 2000.0);
  const Trajectory traj =
      integrate(prob.init(), params, TestingPolicy::constant(rate, horizon),
                cap, dt, wave_over);
  double peak = 0.0;
  for (const auto& s : traj.states) peak = std::max(peak, s.infected);
  return peak;
}

OracleResult cost_oracle(const CostProblem& prob,
                         const std::vector<double>& rates, double dt) {
  if (rates.empty()) throw ValidationError("oracle grid is empty");
  for (double c : rates) {
    if (!(c > 0.0)) throw ValidationError("oracle rates must be > 0");
  }
  OracleResult out;
  out.rates = rates;
  out.peak_infected.resize(rates.size());
  detail::parallel_for(rates.size(), [&](std::size_t i) {
    out.peak_infected[i] = cost_run_peak(prob, rates[i], dt);
  });
  out.best_index = static_cast<std::size_t>(
      std::min_element(out.peak_infected.begin(), out.peak_infected.end()) -
      out.peak_infected.begin());
  out.best_rate = rates[out.best_index];
  return out;
}

OracleResult cost_oracle_search(const CostProblem& prob, double coarse_ratio,
                                double fine_ratio, double dt) {
  const double hi = prob.max_admissible_rate() * (1.0 - 1e-6);
  const double lo = std::min(bracket_floor(prob), 1e-4 * hi);
  const OracleResult coarse =
      cost_oracle(prob, geometric_grid(lo, hi, coarse_ratio), dt);
  const double f_lo = std::max(lo, coarse.best_rate / coarse_ratio);
  const double f_hi = std::min(hi, coarse.best_rate * coarse_ratio);
  const OracleResult fine =
      cost_oracle(prob, geometric_grid(f_lo, f_hi, fine_ratio), dt);

  std::vector<std::pair<double, double>> merged;
  for (std::size_t i = 0; i < coarse.rates.size(); ++i) {
    merged.emplace_back(coarse.rates[i], coarse.peak_infected[i]);
  }
  for (std::size_t i = 0; i < fine.rates.size(); ++i) {
    merged.emplace_back(fine.rates[i], fine.peak_infected[i]);
  }
  std::sort(merged.begin(), merged.end());
  merged.erase(std::unique(merged.begin(), merged.end(),
                           [](const auto& a, const auto& b) {
                             return a.first == b.first;
                           }),
               merged.end());
  OracleResult out;
  for (const auto& [rate, peak] : merged) {
    out.rates.push_back(rate);
    out.peak_infected.push_back(peak);
  }
  out.best_index = static_cast<std::size_t>(
      std::min_element(out.peak_infected.begin(), out.peak_infected.end()) -
      out.peak_infected.begin());
  out.best_rate = out.rates[out.best_index];
  return out;
}

}  // namespace sidur
