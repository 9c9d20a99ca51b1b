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

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sidur/commands.hpp"
#include "sidur/data_io.hpp"
#include "sidur/errors.hpp"

namespace {

constexpr int kExitUsage = 1;

int exit_code(const sidur::Error& e) {
  switch (e.error_class()) {
    case sidur::ErrorClass::kValidation:
      return 2;
    case sidur::ErrorClass::kNumerical:
      return 3;
    case sidur::ErrorClass::kIo:
      return 4;
  }
  return 2;
}

struct Common {
  std::string scenario;
  std::string out_dir;
  std::optional<double> dt_days;
  std::optional<double> horizon_days;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--scenario", c.scenario, "Scenario JSON file")->required();
  cmd->add_option("--out-dir", c.out_dir, "Directory for output files")
      ->required();
  cmd->add_option("--dt-days", c.dt_days, "Override the integration step");
  cmd->add_option("--horizon-days", c.horizon_days,
                  "Override the simulated horizon");
}

void apply_overrides(const Common& c, sidur::Scenario& s) {
  if (c.dt_days) s.dt = *c.dt_days;
  if (c.horizon_days) s.horizon_days = *c.horizon_days;
  s.validate();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"SIDUR epidemic model with testing-rate policies"};
  app.set_version_flag("--version", sidur::kToolVersion);
  app.require_subcommand(1);

  Common common;
  double sample_days = 1.0;

  auto* simulate = app.add_subcommand("simulate", "Integrate a scenario");
  add_common(simulate, common);
  simulate->add_option("--sample-days", sample_days,
                       "Output spacing in days (0 for every step)");

  sidur::BestCommandOptions best;
  auto* best_cmd =
      app.add_subcommand("best", "Apply the BEST rate from one switch day");
  add_common(best_cmd, common);
  best_cmd->add_option("--t-star-day", best.t_star_day, "Switch day")
      ->required();
  best_cmd->add_flag("--freeze-beta", best.freeze_beta,
                     "Hold beta at its switch-day value afterwards");
  best_cmd->add_option("--sample-days", sample_days, "Output spacing in days");

  sidur::BestSweepCommandOptions sweep;
  auto* sweep_cmd = app.add_subcommand(
      "best-sweep", "BEST rate and resulting peak for a range of switch days");
  add_common(sweep_cmd, common);
  sweep_cmd->add_option("--from-day", sweep.from_day)->required();
  sweep_cmd->add_option("--to-day", sweep.to_day)->required();
  sweep_cmd->add_option("--step-days", sweep.step_days);
  sweep_cmd->add_flag("--freeze-beta", sweep.freeze_beta);

  sidur::CostCommandOptions cost;
  double cost_rate = 0.0;
  auto* cost_cmd = app.add_subcommand(
      "cost", "Constant optimal testing rate for a finite stockpile");
  add_common(cost_cmd, common);
  cost_cmd->add_option("--rmax-tests", cost.rmax_tests, "Test stockpile")
      ->required();
  auto* rate_opt = cost_cmd->add_option(
      "--c-tests-per-day", cost_rate,
      "Evaluate this constant rate instead of solving for the optimum");
  cost_cmd->add_flag("--oracle-grid", cost.oracle,
                     "Also run the full-ODE grid search");
  cost_cmd->add_option("--oracle-coarse-percent", cost.oracle_coarse_percent);
  cost_cmd->add_option("--oracle-fine-percent", cost.oracle_fine_percent);
  cost_cmd->add_flag("--historical-coefficients",
                     cost.historical_coefficients,
                     "Follow the beta and theta schedules in simulated runs");
  cost_cmd->add_option("--sample-days", sample_days, "Output spacing in days");

  sidur::FitOutputsCommandOptions fit;
  std::vector<std::string> fit_kinds;
  auto* fit_cmd = app.add_subcommand(
      "fit-outputs", "Fit delayed ICU and death maps to reported data");
  add_common(fit_cmd, common);
  fit_cmd->add_option("--data", fit.data_path, "Reported-data CSV")
      ->required();
  fit_cmd->add_option("--kind", fit_kinds, "icu or deaths (repeatable)");
  fit_cmd->add_option("--max-delay-days", fit.fit.max_delay_days);

  std::string counterfactual;
  std::string icu_map;
  std::string deaths_map;
  std::string compare_data;
  sidur::CompareCommandOptions compare;
  auto* compare_cmd = app.add_subcommand(
      "compare", "ICU and death predictions for a counterfactual scenario");
  add_common(compare_cmd, common);
  compare_cmd->add_option("--counterfactual", counterfactual,
                          "Counterfactual scenario JSON")
      ->required();
  compare_cmd->add_option("--icu-map", icu_map, "Fitted ICU map JSON");
  compare_cmd->add_option("--deaths-map", deaths_map, "Fitted deaths map JSON");
  compare_cmd->add_option("--data", compare_data,
                          "Reported data to fit missing maps from");
  compare_cmd->add_option("--max-delay-days", compare.fit.max_delay_days);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    sidur::Scenario scenario = sidur::load_scenario(common.scenario);
    apply_overrides(common, scenario);
    sidur::CommandOutput out;
    if (simulate->parsed()) {
      out = sidur::cmd_simulate(scenario, common.out_dir, {sample_days});
    } else if (best_cmd->parsed()) {
      best.sample_days = sample_days;
      out = sidur::cmd_best(scenario, common.out_dir, best);
    } else if (sweep_cmd->parsed()) {
      out = sidur::cmd_best_sweep(scenario, common.out_dir, sweep);
    } else if (cost_cmd->parsed()) {
      if (*rate_opt) cost.rate_tests_per_day = cost_rate;
      cost.sample_days = sample_days;
      out = sidur::cmd_cost(scenario, common.out_dir, cost);
    } else if (fit_cmd->parsed()) {
      for (const auto& k : fit_kinds) {
        fit.kinds.push_back(sidur::output_kind_from_string(k));
      }
      out = sidur::cmd_fit_outputs(scenario, common.out_dir, fit);
    } else {
      sidur::Scenario cf = sidur::load_scenario(counterfactual);
      apply_overrides(common, cf);
      if (!icu_map.empty()) compare.icu_map = sidur::load_output_map(icu_map);
      if (!deaths_map.empty()) {
        compare.deaths_map = sidur::load_output_map(deaths_map);
      }
      if (!compare_data.empty()) compare.data_path = compare_data;
      out = sidur::cmd_compare(scenario, cf, common.out_dir, compare);
    }
    std::cout << out.summary.dump(2) << "\n";
  } catch (const sidur::Error& e) {
    std::cerr << "sidur: error: " << e.what() << "\n";
    return exit_code(e);
  }
  return 0;
}
