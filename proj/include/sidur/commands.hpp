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

// Reproducible runs behind the command-line tool. Every command writes its
// files into an output directory together with summary.json and
// manifest.json, and returns the summary.

#ifndef SIDUR_COMMANDS_HPP_
#define SIDUR_COMMANDS_HPP_

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "sidur/data_io.hpp"
#include "sidur/manifest.hpp"
#include "sidur/output_fit.hpp"
#include "sidur/scenario.hpp"

namespace sidur {

struct CommandOutput {
  nlohmann::json summary;
  RunManifest manifest;
};

struct SimulateOptions {
  double sample_days = 1.0;  // 0 keeps every integration step
};
CommandOutput cmd_simulate(const Scenario& scenario,
                           const std::string& out_dir,
                           const SimulateOptions& options = {});

struct BestCommandOptions {
  double t_star_day = 0.0;
  bool freeze_beta = false;
  double sample_days = 1.0;
};
CommandOutput cmd_best(const Scenario& scenario, const std::string& out_dir,
                       const BestCommandOptions& options);

struct BestSweepCommandOptions {
  double from_day = 0.0;
  double to_day = 0.0;
  double step_days = 1.0;
  bool freeze_beta = false;
};
CommandOutput cmd_best_sweep(const Scenario& scenario,
                             const std::string& out_dir,
                             const BestSweepCommandOptions& options);

struct CostCommandOptions {
  double rmax_tests = 0.0;
  // Evaluate this rate instead of solving for the optimum.
  std::optional<double> rate_tests_per_day;
  bool oracle = false;
  double oracle_coarse_percent = 5.0;
  double oracle_fine_percent = 0.5;
  // Let the oracle and the counterfactual run follow the scenario's beta and
  // theta schedules instead of their day-0 values.
  bool historical_coefficients = false;
  double sample_days = 1.0;
};
CommandOutput cmd_cost(const Scenario& scenario, const std::string& out_dir,
                       const CostCommandOptions& options);

struct FitOutputsCommandOptions {
  std::string data_path;
  std::vector<OutputKind> kinds;  // empty: every kind the data supports
  FitOptions fit;
};
CommandOutput cmd_fit_outputs(const Scenario& scenario,
                              const std::string& out_dir,
                              const FitOutputsCommandOptions& options);

struct CompareCommandOptions {
  std::optional<OutputMap> icu_map;
  std::optional<OutputMap> deaths_map;
  // Fit the missing maps on the base scenario from this data file.
  std::optional<std::string> data_path;
  FitOptions fit;
};
CommandOutput cmd_compare(const Scenario& base, const Scenario& counterfactual,
                          const std::string& out_dir,
                          const CompareCommandOptions& options);

nlohmann::json output_map_to_json(const OutputMap& map);
OutputMap output_map_from_json(const nlohmann::json& doc);
OutputMap load_output_map(const std::string& path);

// Scenario document for hashing: data_path is replaced by a digest of the
// file contents so the hash does not depend on where the data lives.
nlohmann::json scenario_fingerprint(const Scenario& scenario);

}  // namespace sidur

#endif  // SIDUR_COMMANDS_HPP_
