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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "sidur/errors.hpp"
#include "sidur/infection_time.hpp"
#include "support.hpp"

namespace sidur {
namespace {

using testing::make_params;
using testing::seeded;

Trajectory constant_infected(double level, double horizon, double dt) {
  Trajectory t;
  t.dt = dt;
  t.population = 1e6;
  const long steps = std::lround(horizon / dt);
  for (long k = 0; k <= steps; ++k) {
    t.times.push_back(static_cast<double>(k) * dt);
    t.states.push_back({1e6 - level, level, 0.0, 0.0, 0.0});
    t.xi.push_back(level * static_cast<double>(k) * dt);
  }
  return t;
}

// Immune majority keeps the wave small: R = 0.8 * 0.15 / 0.1 = 1.2 on the
// susceptible pool, final attack about 4.7% of N.
Trajectory small_wave(double theta, double tests) {
  const double n = 1e6;
  const EpidemicState init{0.15 * n - 200.0, 200.0, 0.0, 0.85 * n, 0.0};
  return integrate(init, make_params(n, 0.8, theta),
                   TestingPolicy::constant(tests, 1e4), 600.0);
}

TEST(XiOfTrajectory, ZeroInfectedGivesZero) {
  const Trajectory t = integrate({1e4, 0.0, 0.0, 0.0, 0.0},
                                 make_params(1e4, 0.3, 0.5),
                                 TestingPolicy::zero(), 20.0);
  for (double v : xi_of_trajectory(t).xi_values) EXPECT_EQ(v, 0.0);
}

TEST(XiOfTrajectory, ConstantInfectedIsLinear) {
  const auto g = xi_of_trajectory(constant_infected(40.0, 25.0, 0.05));
  EXPECT_EQ(g.xi_values.front(), 0.0);
  EXPECT_NEAR(g.xi_values.back(), 40.0 * 25.0, 1e-9);
  EXPECT_EQ(g.provenance, InfectionTimeGrid::Provenance::kFromTrajectory);
}

TEST(XiOfTrajectory, AgreesWithIntegratedInfectionTime) {
  const Trajectory t = integrate(seeded(1e6, 100.0), make_params(1e6, 0.3, 0.5),
                                 TestingPolicy::constant(2000.0, 1e3), 200.0);
  const auto g = xi_of_trajectory(t);
  EXPECT_NEAR(g.xi_values.back() / t.xi.back(), 1.0, 1e-5);
}

TEST(TOfXi, ZeroTargetIsTimeZero) {
  EXPECT_EQ(t_of_xi(0.0, [](double) { return 5.0; }), 0.0);
}

TEST(TOfXi, ConstantCurve) {
  EXPECT_NEAR(t_of_xi(120.0, [](double) { return 8.0; }), 15.0, 1e-12);
}

TEST(TOfXi, VanishingInfectedIsSingular) {
  EXPECT_THROW(t_of_xi(10.0, [](double xi) { return 5.0 - xi; }),
               SingularIntegrand);
}

TEST(TOfXi, InvertsTrajectoryInfectionTime) {
  const Trajectory t = integrate(seeded(1e6, 100.0), make_params(1e6, 0.3, 0.5),
                                 TestingPolicy::constant(2000.0, 1e3), 120.0);
  const InfectedCurve curve = infected_curve(t);
  for (double t_star : {5.0, 30.0, 50.0, 80.0, 110.0}) {
    const auto k = static_cast<std::size_t>(std::lround(t_star / t.dt));
    EXPECT_NEAR(t_of_xi(t.xi[k], curve), t_star, 2.0 * t.dt) << t_star;
  }
}

TEST(Quadrature, ConvergesOnSmoothIntegrand) {
  const double v =
      trapezoid_quadrature([](double x) { return std::exp(x); }, 0.0, 2.0);
  EXPECT_NEAR(v, std::exp(2.0) - 1.0, 1e-6 * std::exp(2.0));
}

TEST(Quadrature, ReportsNonConvergence) {
  QuadratureOptions opts;
  opts.min_intervals = 4;
  opts.max_intervals = 16;
  opts.rel_tol = 1e-14;
  EXPECT_THROW(trapezoid_quadrature([](double x) { return std::sqrt(x); }, 0.0,
                                    1.0, opts),
               NumericalError);
}

ApproxSolutionParams example_params() {
  ApproxSolutionParams p;
  p.susceptible0 = 9e5;
  p.infected0 = 100.0;
  p.recovered0 = 1000.0;
  p.beta = 0.3;
  p.gamma = 0.1;
  p.theta = 0.4;
  p.population = 1e6;
  return p;
}

TEST(ClosedForms, SusceptibleAtOrigin) {
  EXPECT_EQ(xS_closed_form(0.0, example_params()), 9e5);
}

TEST(ClosedForms, SusceptibleHalvesAtLogTwo) {
  const auto p = example_params();
  EXPECT_NEAR(xS_closed_form(p.population * std::log(2.0) / p.beta, p), 4.5e5,
              1e-9);
}

TEST(ClosedForms, RecoveredIsLinear) {
  const auto p = example_params();
  EXPECT_EQ(xU_closed_form(0.0, p), 1000.0);
  EXPECT_NEAR(xU_closed_form(50.0, p), 1005.0, 1e-12);
}

TEST(ClosedForms, MatchOdeInInfectionTime) {
  const double n = 1e6;
  const ModelParams params = make_params(n, 0.35, 0.6);
  const Trajectory t = integrate(seeded(n, 50.0), params,
                                 TestingPolicy::constant(5000.0, 90.0), 300.0);
  const auto p = ApproxSolutionParams::from(t.states.front(), params);
  double worst_s = 0.0;
  double worst_u = 0.0;
  for (std::size_t k = 1; k < t.size(); ++k) {
    const auto& s = t.states[k];
    worst_s = std::max(worst_s,
                       std::abs(xS_closed_form(t.xi[k], p) / s.susceptible - 1));
    worst_u = std::max(worst_u,
                       std::abs(xU_closed_form(t.xi[k], p) / s.recovered - 1));
  }
  EXPECT_LE(worst_s, 1e-4);
  EXPECT_LE(worst_u, 1e-4);
}

TEST(InfectedApprox, OriginAndNoTesting) {
  const auto p = example_params();
  EXPECT_EQ(xI_approx(0.0, p, 0.0), 100.0);
  const double xi = 2e5;
  EXPECT_NEAR(xI_approx(xi, p, 0.0),
              100.0 + 9e5 * (1.0 - std::exp(-0.3 * xi / 1e6)) - 0.1 * xi,
              1e-7);
}

TEST(InfectedApprox, RejectsPerfectSpecificity) {
  auto p = example_params();
  p.theta = 1.0;
  EXPECT_THROW(xI_approx(10.0, p, 5.0), ValidationError);
}

TEST(InfectedApprox, MatchesOdeAtPeakOnSmallWave) {
  const Trajectory t = small_wave(0.0, 2000.0);
  const double attack =
      (t.states.front().susceptible - t.states.back().susceptible) /
      t.population;
  ASSERT_LE(attack, 0.05);
  const auto inf = t.infected();
  const auto k = static_cast<std::size_t>(
      std::max_element(inf.begin(), inf.end()) - inf.begin());
  const auto p = ApproxSolutionParams::from(t.states.front(),
                                            make_params(1e6, 0.8, 0.0));
  const auto tests = tests_in_xi(t);
  const auto eval = xI_approx_checked(t.xi[k], p, tests[k], t);
  EXPECT_FALSE(eval.warning.has_value());
  EXPECT_NEAR(eval.value / inf[k], 1.0, 0.02);
}

TEST(InfectedApprox, WarnsWhenPoolShrinks) {
  const Trajectory t = integrate(seeded(1e6, 100.0), make_params(1e6, 0.3, 0.5),
                                 TestingPolicy::constant(2000.0, 1e3), 200.0);
  EXPECT_TRUE(approximation_warning(t).has_value());
  EXPECT_FALSE(approximation_warning(small_wave(0.0, 0.0)).has_value());
}

TEST(InfectedApprox, UnimodalWithoutTesting) {
  const auto p = example_params();
  double prev = xI_approx(0.0, p, 0.0);
  bool descending = false;
  int turns = 0;
  for (double xi = 1e4; xi < 5e6; xi += 1e4) {
    const double v = xI_approx(xi, p, 0.0);
    if (!descending && v < prev) {
      descending = true;
      ++turns;
    } else if (descending && v > prev) {
      ++turns;
    }
    prev = v;
  }
  EXPECT_EQ(turns, 1);
}

TEST(PeakEquivalence, SamePeakInTimeAndInfectionTime) {
  const Trajectory t = integrate(seeded(1e6, 100.0), make_params(1e6, 0.3, 0.5),
                                 TestingPolicy::constant(2000.0, 1e3), 200.0);
  const auto inf = t.infected();
  const auto k_t = static_cast<std::size_t>(
      std::max_element(inf.begin(), inf.end()) - inf.begin());
  // Last point where x_I still rises per unit of infection time.
  std::size_t k_xi = 0;
  for (std::size_t k = 0; k + 1 < t.size(); ++k) {
    if ((inf[k + 1] - inf[k]) / (t.xi[k + 1] - t.xi[k]) > 0.0) k_xi = k + 1;
  }
  EXPECT_EQ(k_t, k_xi);
}

}  // namespace
}  // namespace sidur
