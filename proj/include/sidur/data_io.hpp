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

#ifndef SIDUR_DATA_IO_HPP_
#define SIDUR_DATA_IO_HPP_

#include <chrono>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "sidur/output_fit.hpp"
#include "sidur/scenario.hpp"

namespace sidur {

// Reported-data CSV columns, in canonical order. Cumulative ones must be
// non-decreasing.
inline const std::vector<std::string>& reported_columns() {
  static const std::vector<std::string> kColumns = {
      "cum_detected", "cum_removed", "daily_positive",
      "daily_tests",  "icu",         "cum_deaths"};
  return kColumns;
}
bool is_cumulative_column(std::string_view name);

std::chrono::sys_days parse_iso_date(std::string_view text);
std::string format_iso_date(std::chrono::sys_days day);

struct ReportedData {
  std::vector<std::chrono::sys_days> dates;
  // Present columns only. An empty CSV cell is stored as NaN (no report that
  // day for that column).
  std::map<std::string, std::vector<double>> columns;

  bool has(const std::string& column) const {
    return columns.count(column) != 0;
  }
  // Days relative to `start`; rows with NaN values are dropped.
  DaySeries day_series(const std::string& column,
                       std::chrono::sys_days start) const;
};

// Throws IoError if the file cannot be read, ValidationError (with the row
// number) on malformed or inconsistent content.
ReportedData load_reported(const std::string& path);
ReportedData parse_reported(std::string_view csv_text);
void write_reported(const std::string& path, const ReportedData& data);

inline constexpr int kScenarioSchemaVersion = 1;

// `base_dir` resolves a relative data_path.
Scenario scenario_from_json(const nlohmann::json& doc,
                            const std::string& base_dir = ".");
nlohmann::json scenario_to_json(const Scenario& scenario);
nlohmann::json policy_to_json(const TestingPolicy& policy);
Scenario load_scenario(const std::string& path);
void save_scenario(const std::string& path, const Scenario& scenario);

struct NamedSeries {
  std::string name;
  std::vector<double> times;
  std::vector<double> values;
};

// Tidy CSV: header "time,name,value", one row per point, series in the order
// given, numbers with 17 significant digits.
void write_series(const std::string& path,
                  const std::vector<NamedSeries>& series);
std::vector<NamedSeries> read_series(const std::string& path);

// 17 significant digits, as used in every CSV this library writes.
std::string format_number(double value);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace sidur

#endif  // SIDUR_DATA_IO_HPP_
