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

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "sidur/best_policy.hpp"
#include "sidur/cost_policy.hpp"
#include "sidur/data_io.hpp"
#include "sidur/errors.hpp"
#include "sidur/infection_time.hpp"
#include "sidur/integrate.hpp"
#include "sidur/model.hpp"
#include "sidur/output_fit.hpp"
#include "sidur/scenario.hpp"

namespace py = pybind11;

namespace {

py::array_t<double> as_array(const std::vector<double>& v) {
  return py::array_t<double>(static_cast<py::ssize_t>(v.size()), v.data());
}

py::array_t<double> compartment(const sidur::Trajectory& t,
                                double sidur::EpidemicState::*field) {
  py::array_t<double> out(static_cast<py::ssize_t>(t.size()));
  auto view = out.mutable_unchecked<1>();
  for (std::size_t k = 0; k < t.size(); ++k) {
    view(static_cast<py::ssize_t>(k)) = t.states[k].*field;
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_sidur, m) {
  m.doc() = "SIDUR epidemic model with testing-rate policies";

  auto validation = py::register_exception<sidur::ValidationError>(
      m, "ValidationError", PyExc_ValueError);
  auto numerical = py::register_exception<sidur::NumericalError>(
      m, "NumericalError", PyExc_ArithmeticError);
  py::register_exception<sidur::IoError>(m, "IoError", PyExc_OSError);
  py::register_exception<sidur::NoBracket>(m, "NoBracket", numerical.ptr());
  py::register_exception<sidur::StepTooLarge>(m, "StepTooLarge",
                                              numerical.ptr());
  py::register_exception<sidur::MonotonicityViolation>(
      m, "MonotonicityViolation", validation.ptr());
  py::register_exception<sidur::NoFirstPeak>(m, "NoFirstPeak",
                                             validation.ptr());
  py::register_exception<sidur::InsufficientOverlap>(
      m, "InsufficientOverlap", validation.ptr());

  py::class_<sidur::EpidemicState>(m, "EpidemicState")
      .def(py::init<>())
      .def(py::init([](double s, double i, double d, double u, double r) {
             return sidur::EpidemicState{s, i, d, u, r};
           }),
           py::arg("susceptible"), py::arg("infected"), py::arg("detected"),
           py::arg("recovered"), py::arg("removed"))
      .def_readwrite("susceptible", &sidur::EpidemicState::susceptible)
      .def_readwrite("infected", &sidur::EpidemicState::infected)
      .def_readwrite("detected", &sidur::EpidemicState::detected)
      .def_readwrite("recovered", &sidur::EpidemicState::recovered)
      .def_readwrite("removed", &sidur::EpidemicState::removed)
      .def("total", &sidur::EpidemicState::total)
      .def("__repr__", [](const sidur::EpidemicState& s) {
        return py::str("EpidemicState(S={}, I={}, D={}, U={}, R={})")
            .format(s.susceptible, s.infected, s.detected, s.recovered,
                    s.removed);
      });

  py::class_<sidur::PiecewiseConstantSchedule>(m, "Schedule")
      .def(py::init<std::vector<double>, std::vector<double>>(),
           py::arg("breakpoints"), py::arg("values"))
      .def_static("constant", &sidur::PiecewiseConstantSchedule::constant)
      .def("value_at", &sidur::PiecewiseConstantSchedule::value_at)
      .def_property_readonly("breakpoints",
                             &sidur::PiecewiseConstantSchedule::breakpoints)
      .def_property_readonly("values",
                             &sidur::PiecewiseConstantSchedule::values);

  py::class_<sidur::ModelParams>(m, "ModelParams")
      .def(py::init([](double n, sidur::PiecewiseConstantSchedule beta,
                       sidur::PiecewiseConstantSchedule theta, double gamma,
                       double rho) {
             sidur::ModelParams p;
             p.population = n;
             p.beta = std::move(beta);
             p.theta = std::move(theta);
             p.gamma = gamma;
             p.rho = rho;
             p.validate();
             return p;
           }),
           py::arg("population"), py::arg("beta"), py::arg("theta"),
           py::arg("gamma"), py::arg("rho"))
      .def_readonly("population", &sidur::ModelParams::population)
      .def_readonly("beta", &sidur::ModelParams::beta)
      .def_readonly("theta", &sidur::ModelParams::theta)
      .def_readonly("gamma", &sidur::ModelParams::gamma)
      .def_readonly("rho", &sidur::ModelParams::rho);

  py::class_<sidur::TestingPolicy>(m, "TestingPolicy")
      .def_static("zero", &sidur::TestingPolicy::zero)
      .def_static("constant", &sidur::TestingPolicy::constant,
                  py::arg("rate"), py::arg("horizon_day"))
      .def_static("series", &sidur::TestingPolicy::series,
                  py::arg("daily_rates"))
      .def_static("best_from", &sidur::TestingPolicy::best_from,
                  py::arg("t_star"), py::arg("rate"),
                  py::arg("prior") = sidur::TestingPolicy())
      .def("rate_at", &sidur::TestingPolicy::rate_at);

  py::class_<sidur::Trajectory>(m, "Trajectory")
      .def_readonly("dt", &sidur::Trajectory::dt)
      .def_readonly("population", &sidur::Trajectory::population)
      .def_property_readonly(
          "times", [](const sidur::Trajectory& t) { return as_array(t.times); })
      .def_property_readonly("susceptible",
                             [](const sidur::Trajectory& t) {
                               return compartment(
                                   t, &sidur::EpidemicState::susceptible);
                             })
      .def_property_readonly(
          "infected",
          [](const sidur::Trajectory& t) {
            return compartment(t, &sidur::EpidemicState::infected);
          })
      .def_property_readonly(
          "detected",
          [](const sidur::Trajectory& t) {
            return compartment(t, &sidur::EpidemicState::detected);
          })
      .def_property_readonly(
          "recovered",
          [](const sidur::Trajectory& t) {
            return compartment(t, &sidur::EpidemicState::recovered);
          })
      .def_property_readonly(
          "removed",
          [](const sidur::Trajectory& t) {
            return compartment(t, &sidur::EpidemicState::removed);
          })
      .def_property_readonly("u_applied",
                             [](const sidur::Trajectory& t) {
                               return as_array(t.u_applied);
                             })
      .def_property_readonly(
          "y1", [](const sidur::Trajectory& t) { return as_array(t.y1); })
      .def_property_readonly(
          "y2", [](const sidur::Trajectory& t) { return as_array(t.y2); })
      .def_property_readonly(
          "y3", [](const sidur::Trajectory& t) { return as_array(t.y3); })
      .def_property_readonly(
          "r_eff", [](const sidur::Trajectory& t) { return as_array(t.r_eff); })
      .def_property_readonly(
          "xi", [](const sidur::Trajectory& t) { return as_array(t.xi); })
      .def_readonly("max_conservation_error",
                    &sidur::Trajectory::max_conservation_error)
      .def("__len__", &sidur::Trajectory::size);

  py::class_<sidur::Scenario>(m, "Scenario")
      .def_readwrite("label", &sidur::Scenario::label)
      .def_readwrite("params", &sidur::Scenario::params)
      .def_readwrite("init", &sidur::Scenario::init)
      .def_readwrite("policy", &sidur::Scenario::policy)
      .def_readwrite("horizon_days", &sidur::Scenario::horizon_days)
      .def_readwrite("dt", &sidur::Scenario::dt)
      .def("simulate", &sidur::Scenario::simulate)
      .def("with_policy", &sidur::Scenario::with_policy);

  m.def("load_scenario", &sidur::load_scenario, py::arg("path"));
  m.def(
      "scenario_from_json",
      [](const std::string& text, const std::string& base_dir) {
        return sidur::scenario_from_json(nlohmann::json::parse(text),
                                         base_dir);
      },
      py::arg("text"), py::arg("base_dir") = ".");
  m.def(
      "scenario_to_json",
      [](const sidur::Scenario& s) { return sidur::scenario_to_json(s).dump(); },
      py::arg("scenario"));

  m.def("testable_population", &sidur::testable_population, py::arg("state"),
        py::arg("theta"));
  m.def(
      "derivatives",
      [](const sidur::EpidemicState& s, const sidur::ModelParams& p, double u,
         double t) { return sidur::derivatives(s, p, u, t); },
      py::arg("state"), py::arg("params"), py::arg("tests_per_day"),
      py::arg("t"));
  m.def(
      "effective_R",
      [](const sidur::EpidemicState& s, const sidur::ModelParams& p, double u,
         double t) { return sidur::effective_R(s, p, u, t); },
      py::arg("state"), py::arg("params"), py::arg("tests_per_day"),
      py::arg("t"));
  m.def(
      "integrate",
      [](const sidur::EpidemicState& init, const sidur::ModelParams& params,
         const sidur::TestingPolicy& policy, double horizon, double dt) {
        return sidur::integrate(init, params, policy, horizon, dt);
      },
      py::arg("init"), py::arg("params"), py::arg("policy"),
      py::arg("horizon_days"), py::arg("dt") = sidur::kDefaultStepDays);

  m.def("xS_closed_form", &sidur::xS_closed_form, py::arg("xi"), py::arg("p"));
  m.def("xU_closed_form", &sidur::xU_closed_form, py::arg("xi"), py::arg("p"));
  py::class_<sidur::ApproxSolutionParams>(m, "ApproxSolutionParams")
      .def_static("from_state", &sidur::ApproxSolutionParams::from,
                  py::arg("state"), py::arg("params"), py::arg("t") = 0.0)
      .def_readwrite("susceptible0",
                     &sidur::ApproxSolutionParams::susceptible0)
      .def_readwrite("infected0", &sidur::ApproxSolutionParams::infected0)
      .def_readwrite("recovered0", &sidur::ApproxSolutionParams::recovered0)
      .def_readwrite("beta", &sidur::ApproxSolutionParams::beta)
      .def_readwrite("gamma", &sidur::ApproxSolutionParams::gamma)
      .def_readwrite("theta", &sidur::ApproxSolutionParams::theta)
      .def_readwrite("population", &sidur::ApproxSolutionParams::population);

  m.def("c_star", &sidur::c_star, py::arg("state"), py::arg("beta"),
        py::arg("theta"), py::arg("gamma"), py::arg("population"));
  py::class_<sidur::BestResult>(m, "BestResult")
      .def_readonly("t_star", &sidur::BestResult::t_star)
      .def_readonly("c_star", &sidur::BestResult::c_star)
      .def_readonly("phi_at_tstar", &sidur::BestResult::phi_at_tstar)
      .def_readonly("trajectory", &sidur::BestResult::trajectory)
      .def_readonly("peak_infected", &sidur::BestResult::peak_infected)
      .def_readonly("peak_day", &sidur::BestResult::peak_day);
  m.def(
      "apply_best",
      [](const sidur::Scenario& s, double t_star, bool freeze_beta) {
        return sidur::apply_best(s, t_star, {freeze_beta});
      },
      py::arg("scenario"), py::arg("t_star"), py::arg("freeze_beta") = false);
  py::class_<sidur::BestSweepPoint>(m, "BestSweepPoint")
      .def_readonly("t_star", &sidur::BestSweepPoint::t_star)
      .def_readonly("c_star", &sidur::BestSweepPoint::c_star)
      .def_readonly("peak_infected", &sidur::BestSweepPoint::peak_infected)
      .def_readonly("peak_day", &sidur::BestSweepPoint::peak_day);
  m.def(
      "best_sweep",
      [](const sidur::Scenario& s, double from, double to, double step,
         bool freeze_beta) {
        py::gil_scoped_release release;
        return sidur::best_sweep(s, from, to, step, {freeze_beta});
      },
      py::arg("scenario"), py::arg("from_day"), py::arg("to_day"),
      py::arg("step_days") = 1.0, py::arg("freeze_beta") = false);

  py::class_<sidur::CostProblem>(m, "CostProblem")
      .def(py::init<double, sidur::ModelParams, sidur::EpidemicState>(),
           py::arg("r_max"), py::arg("params"), py::arg("init"))
      .def_static("from_scenario", &sidur::CostProblem::from_scenario,
                  py::arg("scenario"), py::arg("r_max"),
                  py::arg("constant_coefficients") = true)
      .def("max_admissible_rate", &sidur::CostProblem::max_admissible_rate);
  m.def(
      "reproduction_numbers",
      [](const sidur::CostProblem& p, double c) {
        const auto r = sidur::reproduction_numbers(p, c);
        return py::make_tuple(r.r1, r.r2);
      },
      py::arg("problem"), py::arg("rate"));
  m.def(
      "peak_locations",
      [](const sidur::CostProblem& p, double c) {
        const auto r = sidur::peak_locations(p, c);
        return py::make_tuple(r.xi_p1, r.xi_p2);
      },
      py::arg("problem"), py::arg("rate"));
  m.def(
      "exhaustion_point",
      [](const sidur::CostProblem& p, double c) {
        const auto e = sidur::exhaustion_point(p, c);
        return py::make_tuple(e.xi, e.extinguished);
      },
      py::arg("problem"), py::arg("rate"));
  m.def("optimality_xi", &sidur::optimality_xi, py::arg("problem"),
        py::arg("rate"));
  py::class_<sidur::CostSolution>(m, "CostSolution")
      .def_readonly("rate", &sidur::CostSolution::rate)
      .def_readonly("horizon_day", &sidur::CostSolution::horizon_day)
      .def_readonly("exhaustion_xi", &sidur::CostSolution::exhaustion_xi)
      .def_readonly("xi_p1", &sidur::CostSolution::xi_p1)
      .def_readonly("xi_p2", &sidur::CostSolution::xi_p2)
      .def_readonly("r1", &sidur::CostSolution::r1)
      .def_readonly("r2", &sidur::CostSolution::r2)
      .def_readonly("peak1", &sidur::CostSolution::peak1)
      .def_readonly("peak2", &sidur::CostSolution::peak2)
      .def_readonly("residual", &sidur::CostSolution::residual)
      .def_readonly("extinguished", &sidur::CostSolution::extinguished);
  m.def(
      "solve_cost",
      [](const sidur::CostProblem& p) {
        py::gil_scoped_release release;
        return sidur::solve_cost(p);
      },
      py::arg("problem"));
  m.def(
      "cost_oracle",
      [](const sidur::CostProblem& p, const std::vector<double>& rates,
         double dt) {
        sidur::OracleResult r;
        {
          py::gil_scoped_release release;
          r = sidur::cost_oracle(p, rates, dt);
        }
        return py::make_tuple(r.best_rate, r.peak_infected);
      },
      py::arg("problem"), py::arg("rates"),
      py::arg("dt") = sidur::kDefaultStepDays);

  py::enum_<sidur::OutputKind>(m, "OutputKind")
      .value("ICU", sidur::OutputKind::kIcu)
      .value("DEATHS", sidur::OutputKind::kDeaths);
  py::class_<sidur::DaySeries>(m, "DaySeries")
      .def(py::init([](std::vector<double> days, std::vector<double> values) {
             return sidur::DaySeries{std::move(days), std::move(values)};
           }),
           py::arg("days"), py::arg("values"))
      .def_readonly("days", &sidur::DaySeries::days)
      .def_readonly("values", &sidur::DaySeries::values);
  py::class_<sidur::OutputMap>(m, "OutputMap")
      .def_readonly("kind", &sidur::OutputMap::kind)
      .def_readonly("gain", &sidur::OutputMap::gain)
      .def_readonly("delay_days", &sidur::OutputMap::delay_days)
      .def_readonly("fit_rmse", &sidur::OutputMap::fit_rmse)
      .def_readonly("fit_points", &sidur::OutputMap::fit_points);
  m.def(
      "fit_output_map",
      [](sidur::OutputKind kind, const sidur::Trajectory& baseline,
         const sidur::DaySeries& observed) {
        return sidur::fit_output_map(kind, baseline, observed);
      },
      py::arg("kind"), py::arg("baseline"), py::arg("observed"));
  m.def("predict", &sidur::predict, py::arg("map"), py::arg("trajectory"));
  m.def("peak_reduction_percent", &sidur::peak_reduction_percent,
        py::arg("baseline"), py::arg("counterfactual"));
}
