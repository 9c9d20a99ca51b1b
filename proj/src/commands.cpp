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

#include "sidur/commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <limits>
#include <numeric>

#include "sidur/best_policy.hpp"
#include "sidur/cost_policy.hpp"
#include "sidur/errors.hpp"
#include "sidur/integrate.hpp"

namespace sidur {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

class RunRecorder {
 public:
  RunRecorder(std::string command, std::string label, json inputs,
              const std::string& out_dir)
      : dir_(out_dir), start_(std::chrono::steady_clock::now()) {
    manifest_.command = std::move(command);
    manifest_.label = std::move(label);
    inputs["command"] = manifest_.command;
    inputs["tool_version"] = manifest_.tool_version;
    manifest_.parameter_hash = parameter_hash(inputs);
    manifest_.started_utc = utc_timestamp_now();
    std::error_code ec;
    fs::create_directories(dir_, ec);
    if (ec || !fs::is_directory(dir_)) {
      throw IoError("cannot create output directory '" + dir_.string() +
                    "'");
    }
  }

  void series(const std::string& name, const std::vector<NamedSeries>& s) {
    write_series(path(name), s);
    manifest_.outputs.push_back(name);
  }

  void document(const std::string& name, const json& doc) {
    write_text_file(path(name), doc.dump(2) + "\n");
    manifest_.outputs.push_back(name);
  }

  void table(const std::string& name, const std::vector<std::string>& header,
             const std::vector<std::vector<double>>& rows) {
    std::string out;
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (i) out += ',';
      out += header[i];
    }
    out += '\n';
    for (const auto& row : rows) {
      for (std::size_t i = 0; i < row.size(); ++i) {
        if (i) out += ',';
        out += format_number(row[i]);
      }
      out += '\n';
    }
    write_text_file(path(name), out);
    manifest_.outputs.push_back(name);
  }

  CommandOutput finish(const json& summary) {
    document("summary.json", summary);
    manifest_.wall_clock_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                      start_)
            .count();
    write_text_file(path("manifest.json"), manifest_.to_json().dump(2) + "\n");
    return {summary, manifest_};
  }

 private:
  std::string path(const std::string& name) const {
    return (dir_ / name).string();
  }

  fs::path dir_;
  std::chrono::steady_clock::time_point start_;
  RunManifest manifest_;
};

// Indices of the grid points every `sample_days` apart, always including
// the last point.
std::vector<std::size_t> sample_indices(const Trajectory& traj,
                                        double sample_days) {
  std::size_t stride = 1;
  if (sample_days > 0.0) {
    const double ratio = sample_days / traj.dt;
    const auto r = std::llround(ratio);
    if (r < 1 || std::abs(ratio - static_cast<double>(r)) > 1e-6 * ratio) {
      throw ValidationError("sample interval must be a whole multiple of dt");
    }
    stride = static_cast<std::size_t>(r);
  } else if (sample_days < 0.0) {
    throw ValidationError("sample interval must be >= 0");
  }
  std::vector<std::size_t> idx;
  for (std::size_t k = 0; k < traj.size(); k += stride) idx.push_back(k);
  if (idx.back() != traj.size() - 1) idx.push_back(traj.size() - 1);
  return idx;
}

NamedSeries sampled(const std::string& name, const Trajectory& traj,
                    const std::vector<double>& values,
                    const std::vector<std::size_t>& idx) {
  NamedSeries s{name, {}, {}};
  s.times.reserve(idx.size());
  s.values.reserve(idx.size());
  for (const std::size_t k : idx) {
    s.times.push_back(traj.times[k]);
    s.values.push_back(values[k]);
  }
  return s;
}

NamedSeries from_day_series(const std::string& name, const DaySeries& d) {
  return {name, d.days, d.values};
}

struct Peak {
  double value = 0.0;
  double day = 0.0;
};

Peak peak_of(const Trajectory& traj, const std::vector<double>& values) {
  const auto it = std::max_element(values.begin(), values.end());
  return {*it, traj.times[static_cast<std::size_t>(it - values.begin())]};
}

json state_json(const EpidemicState& s) {
  return {{"susceptible", s.susceptible},
          {"infected", s.infected},
          {"detected", s.detected},
          {"recovered", s.recovered},
          {"removed", s.removed}};
}

double percent_reduction(double base, double cf) {
  return base > 0.0 ? (1.0 - cf / base) * 100.0 : 0.0;
}

json base_inputs(const Scenario& scenario, json options) {
  return {{"scenario", scenario_fingerprint(scenario)},
          {"options", std::move(options)}};
}

// Scenario written next to a counterfactual run: the policy is stored
// inline, so the data file is not needed to replay it.
Scenario detached(Scenario s) {
  s.data_ref.reset();
  return s;
}

}  // namespace

json scenario_fingerprint(const Scenario& scenario) {
  json doc = scenario_to_json(scenario);
  if (scenario.data_ref) {
    doc.erase("data_path");
    doc["data_digest"] = hex64(fnv1a64(read_text_file(*scenario.data_ref)));
  }
  return doc;
}

json output_map_to_json(const OutputMap& map) {
  return {{"kind", to_string(map.kind)},
          {"gain", map.gain},
          {"delay_days", map.delay_days},
          {"fit_from_day", map.fit_from_day},
          {"fit_to_day", map.fit_to_day},
          {"fit_rmse", map.fit_rmse},
          {"fit_points", map.fit_points}};
}

OutputMap output_map_from_json(const json& doc) {
  OutputMap m;
  try {
    m.kind = output_kind_from_string(doc.at("kind").get<std::string>());
    m.gain = doc.at("gain").get<double>();
    m.delay_days = doc.at("delay_days").get<double>();
    m.fit_from_day = doc.value("fit_from_day", 0.0);
    m.fit_to_day = doc.value("fit_to_day", 0.0);
    m.fit_rmse = doc.value("fit_rmse", 0.0);
    m.fit_points = doc.value("fit_points", std::size_t{0});
  } catch (const json::exception& e) {
    throw ValidationError(std::string("output map: ") + e.what());
  }
  if (!(m.gain >= 0.0) || !(m.delay_days >= 0.0)) {
    throw ValidationError("output map: gain and delay_days must be >= 0");
  }
  return m;
}

OutputMap load_output_map(const std::string& path) {
  json doc;
  try {
    doc = json::parse(read_text_file(path));
  } catch (const json::parse_error& e) {
    throw ValidationError("output map '" + path + "': " + e.what());
  }
  return output_map_from_json(doc);
}

// ---------------------------------------------------------------------------

CommandOutput cmd_simulate(const Scenario& scenario, const std::string& out_dir,
                           const SimulateOptions& options) {
  RunRecorder run("simulate", scenario.label,
                  base_inputs(scenario, {{"sample_days", options.sample_days}}),
                  out_dir);
  const Trajectory traj = scenario.simulate();
  const MeasuredOutputs y = outputs(traj);
  const auto idx = sample_indices(traj, options.sample_days);

  std::vector<std::vector<double>> comp(5, std::vector<double>(traj.size()));
  std::vector<double> conservation(traj.size());
  for (std::size_t k = 0; k < traj.size(); ++k) {
    const auto a = traj.states[k].as_array();
    for (std::size_t c = 0; c < 5; ++c) comp[c][k] = a[c];
    conservation[k] = traj.states[k].total() - traj.population;
  }
  run.series("trajectory.csv",
             {sampled("susceptible", traj, comp[0], idx),
              sampled("infected", traj, comp[1], idx),
              sampled("detected", traj, comp[2], idx),
              sampled("recovered", traj, comp[3], idx),
              sampled("removed", traj, comp[4], idx),
              sampled("tests_per_day", traj, traj.u_applied, idx),
              sampled("y1", traj, y.y1, idx),
              sampled("y2", traj, y.y2, idx),
              sampled("y3", traj, y.y3, idx),
              sampled("r_eff", traj, traj.r_eff, idx),
              sampled("xi", traj, traj.xi, idx),
              sampled("conservation_error", traj, conservation, idx)});

  const Peak peak = peak_of(traj, comp[1]);
  const EpidemicState& last = traj.states.back();
  json summary = {
      {"label", scenario.label},
      {"horizon_days", scenario.horizon_days},
      {"dt_days", scenario.dt},
      {"steps", traj.size() - 1},
      {"approximate_R0",
       approximate_R0(scenario.params, traj.u_applied.front())},
      {"peak_infected", peak.value},
      {"peak_day", peak.day},
      {"final_state", state_json(last)},
      {"attack_rate", (traj.population - last.susceptible) / traj.population},
      {"max_conservation_error_people", traj.max_conservation_error},
      {"max_conservation_error_relative",
       traj.max_conservation_error / traj.population},
      {"min_preclamp_value", traj.min_preclamp_value},
      {"clamp_events", traj.clamps.size()}};
  return run.finish(summary);
}

CommandOutput cmd_best(const Scenario& scenario, const std::string& out_dir,
                       const BestCommandOptions& options) {
  RunRecorder run("best", scenario.label,
                  base_inputs(scenario, {{"t_star_day", options.t_star_day},
                                         {"freeze_beta", options.freeze_beta},
                                         {"sample_days", options.sample_days}}),
                  out_dir);
  const Trajectory baseline = scenario.simulate();
  const BestResult best =
      apply_best(scenario, options.t_star_day, {options.freeze_beta});
  const Trajectory& cf = best.trajectory;
  const auto idx = sample_indices(cf, options.sample_days);
  const std::vector<double> base_i = baseline.infected();
  const std::vector<double> best_i = cf.infected();
  run.series("best_series.csv",
             {sampled("infected_baseline", baseline, base_i, idx),
              sampled("infected_best", cf, best_i, idx),
              sampled("tests_baseline", baseline, baseline.u_applied, idx),
              sampled("tests_best", cf, cf.u_applied, idx),
              sampled("r_eff_baseline", baseline, baseline.r_eff, idx),
              sampled("r_eff_best", cf, cf.r_eff, idx)});

  Scenario out = detached(scenario);
  if (options.freeze_beta) {
    out.params.beta = out.params.beta.frozen_from(best.t_star);
  }
  if (best.c_star > 0.0) {
    out.policy = TestingPolicy::best_from(best.t_star, best.c_star,
                                          scenario.policy);
  }
  out.label = scenario.label + " (BEST)";
  run.document("best_scenario.json", scenario_to_json(out));

  const Peak base_peak = peak_of(baseline, base_i);
  const std::vector<double> base_active = active_infected(baseline);
  const double base_a =
      *std::max_element(base_active.begin(), base_active.end());
  const std::vector<double> cf_active = active_infected(cf);
  const double best_a = *std::max_element(cf_active.begin(), cf_active.end());
  json summary = {
      {"label", scenario.label},
      {"t_star_day", best.t_star},
      {"freeze_beta", options.freeze_beta},
      {"c_star_tests_per_day", best.c_star},
      {"phi_at_t_star_per_day", best.phi_at_tstar},
      {"peak_infected_baseline", base_peak.value},
      {"peak_day_baseline", base_peak.day},
      {"peak_infected_best", best.peak_infected},
      {"peak_day_best", best.peak_day},
      {"peak_reduction_percent",
       percent_reduction(base_peak.value, best.peak_infected)},
      {"active_peak_reduction_percent", percent_reduction(base_a, best_a)}};
  return run.finish(summary);
}

CommandOutput cmd_best_sweep(const Scenario& scenario,
                             const std::string& out_dir,
                             const BestSweepCommandOptions& options) {
  RunRecorder run("best-sweep", scenario.label,
                  base_inputs(scenario, {{"from_day", options.from_day},
                                         {"to_day", options.to_day},
                                         {"step_days", options.step_days},
                                         {"freeze_beta", options.freeze_beta}}),
                  out_dir);
  const auto points = best_sweep(scenario, options.from_day, options.to_day,
                                 options.step_days, {options.freeze_beta});
  NamedSeries rate{"c_star", {}, {}};
  NamedSeries peak{"peak_infected", {}, {}};
  NamedSeries log_peak{"log10_peak_infected", {}, {}};
  NamedSeries peak_day{"peak_day", {}, {}};
  for (const auto& p : points) {
    for (auto* s : {&rate, &peak, &log_peak, &peak_day}) {
      s->times.push_back(p.t_star);
    }
    rate.values.push_back(p.c_star);
    peak.values.push_back(p.peak_infected);
    log_peak.values.push_back(p.peak_infected > 0.0
                                  ? std::log10(p.peak_infected)
                                  : -std::numeric_limits<double>::infinity());
    peak_day.values.push_back(p.peak_day);
  }
  run.series("best_sweep.csv", {rate, peak, log_peak, peak_day});

  json summary = {{"label", scenario.label},
                  {"from_day", options.from_day},
                  {"to_day", options.to_day},
                  {"step_days", options.step_days},
                  {"freeze_beta", options.freeze_beta},
                  {"candidates", points.size()}};
  if (!points.empty()) {
    summary["c_star_first"] = points.front().c_star;
    summary["c_star_last"] = points.back().c_star;
    summary["peak_infected_first"] = points.front().peak_infected;
    summary["peak_infected_last"] = points.back().peak_infected;
  }
  return run.finish(summary);
}

namespace {

json evaluate_cost_rate(const CostProblem& prob, double rate) {
  const ReproductionNumbers r = reproduction_numbers(prob, rate);
  const double horizon = prob.r_max() / rate;
  json out = {{"rate_tests_per_day", rate},
              {"horizon_day", horizon},
              {"horizon_whole_days", std::floor(horizon)},
              {"r1", r.r1},
              {"r2", r.r2}};
  const Exhaustion ex = exhaustion_point(prob, rate);
  out["exhaustion_xi"] = ex.xi;
  out["extinguished"] = ex.extinguished;
  if (r.r1 >= 1.0) {
    const PeakLocations loc = peak_locations(prob, rate);
    out["xi_p1"] = loc.xi_p1;
    out["xi_p2"] = loc.xi_p2;
    const double xi_opt = optimality_xi(prob, rate);
    out["optimality_xi"] = xi_opt;
    out["residual"] = ex.xi - xi_opt;
    if (ex.xi >= loc.xi_p1) {
      const PeakValues pv = peak_values(prob, rate, ex.xi);
      out["peak1"] = pv.peak1;
      out["peak2"] = pv.peak2;
    }
  }
  return out;
}

}  // namespace

CommandOutput cmd_cost(const Scenario& scenario, const std::string& out_dir,
                       const CostCommandOptions& options) {
  json opts = {{"rmax_tests", options.rmax_tests},
               {"oracle", options.oracle},
               {"historical_coefficients", options.historical_coefficients},
               {"sample_days", options.sample_days}};
  if (options.rate_tests_per_day) {
    opts["rate_tests_per_day"] = *options.rate_tests_per_day;
  }
  if (options.oracle) {
    opts["oracle_coarse_percent"] = options.oracle_coarse_percent;
    opts["oracle_fine_percent"] = options.oracle_fine_percent;
  }
  RunRecorder run("cost", scenario.label, base_inputs(scenario, opts),
                  out_dir);
  const CostProblem prob = CostProblem::from_scenario(
      scenario, options.rmax_tests, !options.historical_coefficients);

  json summary = {{"label", scenario.label},
                  {"rmax_tests", options.rmax_tests},
                  {"beta_per_day", prob.beta()},
                  {"theta", prob.theta()},
                  {"max_admissible_rate", prob.max_admissible_rate()}};
  double rate = 0.0;
  if (options.rate_tests_per_day) {
    rate = *options.rate_tests_per_day;
    if (!(rate > 0.0)) {
      throw ValidationError("--c-tests-per-day must be > 0");
    }
    summary["mode"] = "evaluate";
    summary["solution"] = evaluate_cost_rate(prob, rate);
  } else {
    CostSolution sol;
    try {
      sol = solve_cost(prob);
    } catch (const NoBracket& e) {
      std::vector<std::vector<double>> rows;
      for (const auto& [c, f] : e.residual_curve()) rows.push_back({c, f});
      run.table("cost_residual_curve.csv",
                {"rate_tests_per_day", "residual_xi"}, rows);
      throw;
    }
    rate = sol.rate;
    summary["mode"] = "solve";
    summary["solution"] = {{"rate_tests_per_day", sol.rate},
                           {"horizon_day", sol.horizon_day},
                           {"horizon_whole_days", std::floor(sol.horizon_day)},
                           {"exhaustion_xi", sol.exhaustion_xi},
                           {"xi_p1", sol.xi_p1},
                           {"xi_p2", sol.xi_p2},
                           {"r1", sol.r1},
                           {"r2", sol.r2},
                           {"peak1", sol.peak1},
                           {"peak2", sol.peak2},
                           {"residual", sol.residual},
                           {"extinguished", sol.extinguished}};
  }

  Scenario cf = detached(scenario);
  cf.params = prob.params();
  cf.policy = TestingPolicy::constant(rate, options.rmax_tests / rate);
  cf.label = scenario.label + " (COST)";
  run.document("cost_scenario.json", scenario_to_json(cf));

  const Trajectory baseline = scenario.simulate();
  const Trajectory cost_run = cf.simulate();
  const auto idx = sample_indices(cost_run, options.sample_days);
  const std::vector<double> base_i = baseline.infected();
  const std::vector<double> cost_i = cost_run.infected();
  run.series("cost_series.csv",
             {sampled("tests_baseline", baseline, baseline.u_applied, idx),
              sampled("tests_cost", cost_run, cost_run.u_applied, idx),
              sampled("infected_baseline", baseline, base_i, idx),
              sampled("infected_cost", cost_run, cost_i, idx)});
  summary["peak_infected_baseline"] = peak_of(baseline, base_i).value;
  summary["peak_infected_cost_run"] = peak_of(cost_run, cost_i).value;
  summary["peak_day_cost_run"] = peak_of(cost_run, cost_i).day;

  if (options.oracle) {
    const OracleResult oracle = cost_oracle_search(
        prob, 1.0 + options.oracle_coarse_percent / 100.0,
        1.0 + options.oracle_fine_percent / 100.0, scenario.dt);
    std::vector<std::vector<double>> rows;
    for (std::size_t i = 0; i < oracle.rates.size(); ++i) {
      rows.push_back({oracle.rates[i], oracle.peak_infected[i]});
    }
    run.table("cost_oracle.csv", {"rate_tests_per_day", "peak_infected"},
              rows);
    summary["oracle"] = {
        {"rate_tests_per_day", oracle.best_rate},
        {"peak_infected", oracle.peak_infected[oracle.best_index]},
        {"grid_points", oracle.rates.size()},
        {"relative_difference", (rate - oracle.best_rate) / oracle.best_rate}};
  }
  return run.finish(summary);
}

namespace {

const char* column_for(OutputKind kind) {
  return kind == OutputKind::kIcu ? "icu" : "cum_deaths";
}

std::chrono::sys_days scenario_start(const Scenario& scenario) {
  if (!scenario.start_date) {
    throw ValidationError("scenario needs start_date to align reported data");
  }
  return parse_iso_date(*scenario.start_date);
}

std::vector<OutputKind> kinds_in(const ReportedData& data,
                                 std::vector<OutputKind> requested) {
  if (requested.empty()) {
    for (OutputKind k : {OutputKind::kIcu, OutputKind::kDeaths}) {
      if (data.has(column_for(k))) requested.push_back(k);
    }
    if (requested.empty()) {
      throw ValidationError("reported data has neither icu nor cum_deaths");
    }
  }
  for (OutputKind k : requested) {
    if (!data.has(column_for(k))) {
      throw ValidationError(std::string("reported data has no '") +
                            column_for(k) + "' column");
    }
  }
  return requested;
}

std::string data_digest(const std::string& path) {
  return hex64(fnv1a64(read_text_file(path)));
}

json fit_json(const FitOptions& fit) {
  return {{"max_delay_days", fit.max_delay_days},
          {"min_points", fit.min_points}};
}

}  // namespace

CommandOutput cmd_fit_outputs(const Scenario& scenario,
                              const std::string& out_dir,
                              const FitOutputsCommandOptions& options) {
  std::vector<std::string> kind_names;
  for (OutputKind k : options.kinds) kind_names.push_back(to_string(k));
  RunRecorder run("fit-outputs", scenario.label,
                  base_inputs(scenario,
                              {{"data_digest", data_digest(options.data_path)},
                               {"kinds", kind_names},
                               {"fit", fit_json(options.fit)}}),
                  out_dir);
  const ReportedData data = load_reported(options.data_path);
  const auto start = scenario_start(scenario);
  const Trajectory baseline = scenario.simulate();

  json maps = json::array();
  for (OutputKind kind : kinds_in(data, options.kinds)) {
    const DaySeries observed = data.day_series(column_for(kind), start);
    const OutputMap map =
        fit_output_map(kind, baseline, observed, options.fit);
    const std::string name = to_string(kind);
    run.document("output_map_" + name + ".json", output_map_to_json(map));
    run.series("fit_" + name + ".csv",
               {from_day_series("observed", observed),
                from_day_series("fitted", predict(map, baseline))});
    maps.push_back(output_map_to_json(map));
  }
  return run.finish({{"label", scenario.label}, {"maps", maps}});
}

CommandOutput cmd_compare(const Scenario& base, const Scenario& counterfactual,
                          const std::string& out_dir,
                          const CompareCommandOptions& options) {
  json opts = {{"counterfactual", scenario_fingerprint(counterfactual)},
               {"fit", fit_json(options.fit)}};
  if (options.icu_map) opts["icu_map"] = output_map_to_json(*options.icu_map);
  if (options.deaths_map) {
    opts["deaths_map"] = output_map_to_json(*options.deaths_map);
  }
  if (options.data_path) opts["data_digest"] = data_digest(*options.data_path);
  RunRecorder run("compare", base.label, base_inputs(base, opts), out_dir);

  const Trajectory base_traj = base.simulate();
  const Trajectory cf_traj = counterfactual.simulate();

  std::vector<OutputMap> maps;
  if (options.icu_map) maps.push_back(*options.icu_map);
  if (options.deaths_map) maps.push_back(*options.deaths_map);
  if (options.data_path) {
    const ReportedData data = load_reported(*options.data_path);
    const auto start = scenario_start(base);
    for (OutputKind kind : kinds_in(data, {})) {
      const bool given = std::any_of(maps.begin(), maps.end(),
                                     [kind](const OutputMap& m) {
                                       return m.kind == kind;
                                     });
      if (given) continue;
      maps.push_back(fit_output_map(
          kind, base_traj, data.day_series(column_for(kind), start),
          options.fit));
    }
  }
  if (maps.empty()) {
    throw ValidationError("compare needs an ICU or deaths map, or data to fit");
  }
  std::sort(maps.begin(), maps.end(), [](const auto& a, const auto& b) {
    return static_cast<int>(a.kind) < static_cast<int>(b.kind);
  });

  std::vector<NamedSeries> series;
  json results = json::object();
  for (const OutputMap& map : maps) {
    const std::string name = to_string(map.kind);
    const DaySeries pb = predict(map, base_traj);
    const DaySeries pc = predict(map, cf_traj);
    series.push_back(from_day_series(name + "_baseline", pb));
    series.push_back(from_day_series(name + "_counterfactual", pc));
    const double total_b = std::accumulate(pb.values.begin(), pb.values.end(), 0.0);
    const double total_c = std::accumulate(pc.values.begin(), pc.values.end(), 0.0);
    results[name] = {{"map", output_map_to_json(map)},
                     {"peak_baseline", *std::max_element(pb.values.begin(), pb.values.end())},
                     {"peak_counterfactual", *std::max_element(pc.values.begin(), pc.values.end())},
                     {"peak_reduction_percent", peak_reduction_percent(pb, pc)},
                     {"final_reduction_percent", final_reduction_percent(pb, pc)},
                     {"total_reduction_percent", percent_reduction(total_b, total_c)}};
  }
  run.series("compare_series.csv", series);
  return run.finish({{"label", base.label},
                     {"counterfactual_label", counterfactual.label},
                     {"outputs", results}});
}

}  // namespace sidur
