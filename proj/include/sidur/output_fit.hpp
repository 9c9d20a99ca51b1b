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

// Delayed output maps. ICU occupancy follows active infections
// A = x_I + x_D and cumulative deaths follow cumulative infections
// I = N - x_S, each scaled by a gain and shifted by a delay in days.

#ifndef SIDUR_OUTPUT_FIT_HPP_
#define SIDUR_OUTPUT_FIT_HPP_

#include <string>
#include <vector>

#include "sidur/integrate.hpp"

namespace sidur {

// Values indexed by day (possibly with gaps). Days are relative to the
// trajectory's t = 0.
struct DaySeries {
  std::vector<double> days;
  std::vector<double> values;
  std::size_t size() const { return days.size(); }
};

enum class OutputKind { kIcu, kDeaths };
std::string to_string(OutputKind kind);
OutputKind output_kind_from_string(const std::string& name);

struct OutputMap {
  OutputKind kind = OutputKind::kIcu;
  double gain = 0.0;
  double delay_days = 0.0;
  double fit_from_day = 0.0;
  double fit_to_day = 0.0;
  double fit_rmse = 0.0;
  std::size_t fit_points = 0;
};

std::vector<double> active_infected(const Trajectory& traj);
std::vector<double> cumulative_infected(const Trajectory& traj);

// The input series the map's kind reads (A for ICU, I for deaths).
std::vector<double> map_input(OutputKind kind, const Trajectory& traj);

struct FitOptions {
  int max_delay_days = 40;
  std::size_t min_points = 10;
};

// Least-squares gain (clamped at 0) for each whole-day delay, keeping the
// delay with the lowest RMSE (the smaller delay on ties). Observations with
// NaN values are skipped. Throws InsufficientOverlap if no delay leaves
// `min_points` pairs.
OutputMap fit_output_map(OutputKind kind, const Trajectory& baseline,
                         const DaySeries& observed,
                         const FitOptions& options = {});

// gain * input(t - delay) at every whole day of the trajectory. Before
// t = delay the input is held at its t = 0 value.
DaySeries predict(const OutputMap& map, const Trajectory& traj);

// (1 - max(counterfactual) / max(baseline)) * 100.
double peak_reduction_percent(const DaySeries& baseline,
                              const DaySeries& counterfactual);
// (1 - last(counterfactual) / last(baseline)) * 100.
double final_reduction_percent(const DaySeries& baseline,
                               const DaySeries& counterfactual);

}  // namespace sidur

#endif  // SIDUR_OUTPUT_FIT_HPP_
