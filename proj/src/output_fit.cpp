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

#include "sidur/output_fit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "sidur/errors.hpp"

namespace sidur {

std::string to_string(OutputKind kind) {
  return kind == OutputKind::kIcu ? "icu" : "deaths";
}

OutputKind output_kind_from_string(const std::string& name) {
  if (name == "icu") return OutputKind::kIcu;
  if (name == "deaths") return OutputKind::kDeaths;
  throw ValidationError("unknown output kind '" + name +
                        "' (expected icu or deaths)");
}

std::vector<double> active_infected(const Trajectory& traj) {
  std::vector<double> out;
  out.reserve(traj.size());
  for (const auto& s : traj.states) out.push_back(s.infected + s.detected);
  return out;
}

std::vector<double> cumulative_infected(const Trajectory& traj) {
  std::vector<double> out;
  out.reserve(traj.size());
  for (const auto& s : traj.states) {
    out.push_back(traj.population - s.susceptible);
  }
  return out;
}

std::vector<double> map_input(OutputKind kind, const Trajectory& traj) {
  return kind == OutputKind::kIcu ? active_infected(traj)
                                  : cumulative_infected(traj);
}

namespace {

// Linear interpolation on the uniform trajectory grid; t must be in range.
double sample(const std::vector<double>& series, double dt, double t) {
  const double pos = t / dt;
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  if (lo + 1 >= series.size()) return series.back();
  const double w = pos - static_cast<double>(lo);
  if (w < 1e-9) return series[lo];
  if (w > 1.0 - 1e-9) return series[lo + 1];
  return (1.0 - w) * series[lo] + w * series[lo + 1];
}

}  // namespace

OutputMap fit_output_map(OutputKind kind, const Trajectory& baseline,
                         const DaySeries& observed,
                         const FitOptions& options) {
  if (observed.days.size() != observed.values.size()) {
    throw ValidationError("observed series: days and values differ in length");
  }
  const std::vector<double> input = map_input(kind, baseline);
  const double t_end = baseline.times.back();

  OutputMap best;
  best.kind = kind;
  double best_rmse = std::numeric_limits<double>::infinity();
  bool found = false;
  std::size_t most_pairs = 0;

  for (int delay = 0; delay <= options.max_delay_days; ++delay) {
    const auto d = static_cast<double>(delay);
    std::vector<double> xs;
    std::vector<double> ys;
    double from = 0.0;
    double to = 0.0;
    for (std::size_t i = 0; i < observed.size(); ++i) {
      const double t = observed.days[i];
      const double y = observed.values[i];
      if (std::isnan(y) || t - d < 0.0 || t > t_end + 1e-9) continue;
      if (xs.empty()) from = t;
      to = t;
      xs.push_back(sample(input, baseline.dt, t - d));
      ys.push_back(y);
    }
    most_pairs = std::max(most_pairs, xs.size());
    if (xs.size() < options.min_points) continue;

    double sxy = 0.0;
    double sxx = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      sxy += xs[i] * ys[i];
      sxx += xs[i] * xs[i];
    }
    const double gain = sxx > 0.0 ? std::max(0.0, sxy / sxx) : 0.0;
    double sse = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const double r = gain * xs[i] - ys[i];
      sse += r * r;
    }
    const double rmse = std::sqrt(sse / static_cast<double>(xs.size()));
    if (rmse < best_rmse) {
      best_rmse = rmse;
      best.gain = gain;
      best.delay_days = d;
      best.fit_from_day = from;
      best.fit_to_day = to;
      best.fit_rmse = rmse;
      best.fit_points = xs.size();
      found = true;
    }
  }
  if (!found) {
    std::ostringstream os;
    os << "at most " << most_pairs << " observed points overlap the "
       << "trajectory after the delay shift; need " << options.min_points;
    throw InsufficientOverlap(os.str());
  }
  return best;
}

DaySeries predict(const OutputMap& map, const Trajectory& traj) {
  const std::vector<double> input = map_input(map.kind, traj);
  DaySeries out;
  const auto last_day =
      static_cast<long>(std::floor(traj.times.back() + 1e-9));
  for (long day = 0; day <= last_day; ++day) {
    const double shifted = static_cast<double>(day) - map.delay_days;
    const double x = shifted <= 0.0 ? input.front()
                                    : sample(input, traj.dt, shifted);
    out.days.push_back(static_cast<double>(day));
    out.values.push_back(map.gain * x);
  }
  return out;
}

double peak_reduction_percent(const DaySeries& baseline,
                              const DaySeries& counterfactual) {
  if (baseline.values.empty() || counterfactual.values.empty()) {
    throw ValidationError("reduction needs non-empty series");
  }
  const double base =
      *std::max_element(baseline.values.begin(), baseline.values.end());
  const double cf = *std::max_element(counterfactual.values.begin(),
                                      counterfactual.values.end());
  if (!(base > 0.0)) return 0.0;
  return (1.0 - cf / base) * 100.0;
}

double final_reduction_percent(const DaySeries& baseline,
                               const DaySeries& counterfactual) {
  if (baseline.values.empty() || counterfactual.values.empty()) {
    throw ValidationError("reduction needs non-empty series");
  }
  const double base = baseline.values.back();
  if (!(base > 0.0)) return 0.0;
  return (1.0 - counterfactual.values.back() / base) * 100.0;
}

}  // namespace sidur
