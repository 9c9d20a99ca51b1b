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

#include "sidur/data_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include "sidur/errors.hpp"

namespace sidur {

using nlohmann::json;

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
    s.remove_prefix(1);
  }
  while (!s.empty() &&
         (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      out.push_back(trim(line.substr(start)));
      return out;
    }
    out.push_back(trim(line.substr(start, comma - start)));
    start = comma + 1;
  }
}

bool parse_double(std::string_view text, double& out) {
  if (text.empty()) return false;
  if (text.front() == '+') text.remove_prefix(1);
  const auto [ptr, ec] =
      std::from_chars(text.data(), text.data() + text.size(), out);
  return ec == std::errc() && ptr == text.data() + text.size();
}

[[noreturn]] void row_error(std::size_t row, const std::string& what) {
  throw ValidationError("reported data, line " + std::to_string(row) + ": " +
                        what);
}

}  // namespace

bool is_cumulative_column(std::string_view name) {
  return name.rfind("cum_", 0) == 0;
}

std::chrono::sys_days parse_iso_date(std::string_view text) {
  int y = 0;
  unsigned m = 0;
  unsigned d = 0;
  auto fail = [&] {
    throw ValidationError("bad ISO-8601 date '" + std::string(text) + "'");
  };
  if (text.size() != 10 || text[4] != '-' || text[7] != '-') fail();
  auto num = [&](std::size_t pos, std::size_t len, auto& out) {
    const auto [ptr, ec] =
        std::from_chars(text.data() + pos, text.data() + pos + len, out);
    if (ec != std::errc() || ptr != text.data() + pos + len) fail();
  };
  num(0, 4, y);
  num(5, 2, m);
  num(8, 2, d);
  const std::chrono::year_month_day ymd{std::chrono::year{y},
                                        std::chrono::month{m},
                                        std::chrono::day{d}};
  if (!ymd.ok()) fail();
  return std::chrono::sys_days{ymd};
}

std::string format_iso_date(std::chrono::sys_days day) {
  const std::chrono::year_month_day ymd{day};
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", int(ymd.year()),
                unsigned(ymd.month()), unsigned(ymd.day()));
  return buf;
}

std::string format_number(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << content;
  if (!out) throw IoError("write to '" + path + "' failed");
}

// ---------------------------------------------------------------------------
// Reported data

DaySeries ReportedData::day_series(const std::string& column,
                                   std::chrono::sys_days start) const {
  const auto it = columns.find(column);
  if (it == columns.end()) {
    throw ValidationError("reported data has no '" + column + "' column");
  }
  DaySeries out;
  for (std::size_t i = 0; i < dates.size(); ++i) {
    if (std::isnan(it->second[i])) continue;
    out.days.push_back(static_cast<double>((dates[i] - start).count()));
    out.values.push_back(it->second[i]);
  }
  return out;
}

ReportedData parse_reported(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t nl = text.find('\n', start);
    if (nl == std::string_view::npos) nl = text.size();
    lines.push_back(text.substr(start, nl - start));
    start = nl + 1;
  }
  while (!lines.empty() && trim(lines.back()).empty()) lines.pop_back();
  if (lines.empty()) throw ValidationError("reported data: file is empty");

  const auto header = split_fields(lines[0]);
  if (header.empty() || header[0] != "date") {
    row_error(1, "first column must be 'date'");
  }
  const auto& known = reported_columns();
  std::vector<std::string> names;
  for (std::size_t c = 1; c < header.size(); ++c) {
    const std::string name(header[c]);
    if (std::find(known.begin(), known.end(), name) == known.end()) {
      row_error(1, "unknown column '" + name + "'");
    }
    if (std::find(names.begin(), names.end(), name) != names.end()) {
      row_error(1, "duplicate column '" + name + "'");
    }
    names.push_back(name);
  }
  if (lines.size() < 2) throw ValidationError("reported data: no data rows");

  ReportedData data;
  std::vector<std::vector<double>> cols(names.size());
  for (std::size_t r = 1; r < lines.size(); ++r) {
    const std::size_t row = r + 1;
    const auto fields = split_fields(lines[r]);
    if (fields.size() != header.size()) {
      row_error(row, "expected " + std::to_string(header.size()) +
                         " fields, found " + std::to_string(fields.size()));
    }
    std::chrono::sys_days date;
    try {
      date = parse_iso_date(fields[0]);
    } catch (const ValidationError& e) {
      row_error(row, e.what());
    }
    if (!data.dates.empty() && !(date > data.dates.back())) {
      row_error(row, "dates must be strictly increasing");
    }
    data.dates.push_back(date);
    for (std::size_t c = 0; c < names.size(); ++c) {
      const std::string_view cell = fields[c + 1];
      double v = std::numeric_limits<double>::quiet_NaN();
      if (!cell.empty()) {
        if (!parse_double(cell, v) || !std::isfinite(v)) {
          row_error(row, "column '" + names[c] + "': bad number '" +
                             std::string(cell) + "'");
        }
        if (v < 0.0) {
          row_error(row, "column '" + names[c] + "': negative count");
        }
        if (is_cumulative_column(names[c])) {
          for (auto it = cols[c].rbegin(); it != cols[c].rend(); ++it) {
            if (std::isnan(*it)) continue;
            if (v < *it) {
              row_error(row, "column '" + names[c] +
                                 "' is cumulative but decreases");
            }
            break;
          }
        }
      }
      cols[c].push_back(v);
    }
  }
  for (std::size_t c = 0; c < names.size(); ++c) {
    data.columns.emplace(names[c], std::move(cols[c]));
  }
  return data;
}

ReportedData load_reported(const std::string& path) {
  return parse_reported(read_text_file(path));
}

void write_reported(const std::string& path, const ReportedData& data) {
  std::ostringstream os;
  os << "date";
  std::vector<const std::vector<double>*> present;
  for (const auto& name : reported_columns()) {
    const auto it = data.columns.find(name);
    if (it == data.columns.end()) continue;
    os << ',' << name;
    present.push_back(&it->second);
  }
  os << '\n';
  for (std::size_t i = 0; i < data.dates.size(); ++i) {
    os << format_iso_date(data.dates[i]);
    for (const auto* col : present) {
      os << ',';
      if (!std::isnan((*col)[i])) os << format_number((*col)[i]);
    }
    os << '\n';
  }
  write_text_file(path, os.str());
}

// ---------------------------------------------------------------------------
// Scenario JSON

namespace {

void reject_unknown(const json& obj, const std::string& where,
                    std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) {
    throw ValidationError(where + ": expected a JSON object");
  }
  for (const auto& [key, _] : obj.items()) {
    const bool ok = std::any_of(allowed.begin(), allowed.end(),
                                [&key = key](const char* a) { return key == a; });
    if (!ok) throw ValidationError(where + ": unknown field '" + key + "'");
  }
}

const json& require(const json& obj, const std::string& where,
                    const char* key) {
  const auto it = obj.find(key);
  if (it == obj.end()) {
    throw ValidationError(where + ": missing field '" + key + "'");
  }
  return *it;
}

double number(const json& v, const std::string& where) {
  if (!v.is_number()) throw ValidationError(where + ": expected a number");
  return v.get<double>();
}

std::vector<double> numbers(const json& v, const std::string& where) {
  if (!v.is_array()) throw ValidationError(where + ": expected an array");
  std::vector<double> out;
  out.reserve(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    out.push_back(number(v[i], where + "[" + std::to_string(i) + "]"));
  }
  return out;
}

PiecewiseConstantSchedule schedule_from_json(const json& v,
                                             const std::string& where) {
  try {
    if (v.is_number()) return PiecewiseConstantSchedule::constant(v.get<double>());
    reject_unknown(v, where, {"breakpoints_day", "values"});
    return PiecewiseConstantSchedule(
        numbers(require(v, where, "breakpoints_day"), where + ".breakpoints_day"),
        numbers(require(v, where, "values"), where + ".values"));
  } catch (const ValidationError& e) {
    const std::string what = e.what();
    if (what.rfind(where, 0) == 0) throw;
    throw ValidationError(where + ": " + what);
  }
}

json schedule_to_json(const PiecewiseConstantSchedule& s) {
  if (s.is_constant()) return s.values().front();
  return json{{"breakpoints_day", s.breakpoints()}, {"values", s.values()}};
}

struct PolicyContext {
  const ReportedData* data = nullptr;
  std::optional<std::chrono::sys_days> start;
};

TestingPolicy policy_from_json(const json& v, const std::string& where,
                               const PolicyContext& ctx) {
  if (!v.is_object()) throw ValidationError(where + ": expected an object");
  const json& kind_v = require(v, where, "kind");
  if (!kind_v.is_string()) {
    throw ValidationError(where + ".kind: expected a string");
  }
  const std::string kind = kind_v.get<std::string>();
  if (kind == "zero") {
    reject_unknown(v, where, {"kind"});
    return TestingPolicy::zero();
  }
  if (kind == "constant") {
    reject_unknown(v, where, {"kind", "rate_tests_per_day", "horizon_day"});
    return TestingPolicy::constant(
        number(require(v, where, "rate_tests_per_day"), where + ".rate_tests_per_day"),
        number(require(v, where, "horizon_day"), where + ".horizon_day"));
  }
  if (kind == "series") {
    reject_unknown(v, where, {"kind", "daily_tests", "from_data"});
    const bool inline_rates = v.contains("daily_tests");
    const bool from_data = v.contains("from_data");
    if (inline_rates == from_data) {
      throw ValidationError(where +
                            ": give exactly one of daily_tests or from_data");
    }
    if (inline_rates) {
      return TestingPolicy::series(
          numbers(v.at("daily_tests"), where + ".daily_tests"));
    }
    const json& col = v.at("from_data");
    if (!col.is_string()) {
      throw ValidationError(where + ".from_data: expected a column name");
    }
    if (ctx.data == nullptr || !ctx.start) {
      throw ValidationError(where +
                            ": from_data needs data_path and start_date");
    }
    const DaySeries s = ctx.data->day_series(col.get<std::string>(), *ctx.start);
    std::vector<double> rates;
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (s.days[i] < 0.0) continue;
      if (s.days[i] != static_cast<double>(rates.size())) {
        throw ValidationError(
            where + ": reported '" + col.get<std::string>() +
            "' has a gap at day " + std::to_string(rates.size()) +
            " after start_date");
      }
      rates.push_back(s.values[i]);
    }
    return TestingPolicy::series(std::move(rates));
  }
  if (kind == "best_from") {
    reject_unknown(v, where, {"kind", "t_star_day", "rate_tests_per_day", "before"});
    TestingPolicy before;
    if (v.contains("before")) {
      before = policy_from_json(v.at("before"), where + ".before", ctx);
    }
    return TestingPolicy::best_from(
        number(require(v, where, "t_star_day"), where + ".t_star_day"),
        number(require(v, where, "rate_tests_per_day"), where + ".rate_tests_per_day"),
        std::move(before));
  }
  throw ValidationError(where + ".kind: unknown policy kind '" + kind + "'");
}

}  // namespace

json policy_to_json(const TestingPolicy& policy) {
  return std::visit(
      [](const auto& p) -> json {
        using P = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<P, TestingPolicy::Zero>) {
          return json{{"kind", "zero"}};
        } else if constexpr (std::is_same_v<P, TestingPolicy::Constant>) {
          return json{{"kind", "constant"},
                      {"rate_tests_per_day", p.rate},
                      {"horizon_day", p.horizon_day}};
        } else if constexpr (std::is_same_v<P, TestingPolicy::Series>) {
          return json{{"kind", "series"}, {"daily_tests", p.daily_rates}};
        } else {
          return json{{"kind", "best_from"},
                      {"t_star_day", p.t_star},
                      {"rate_tests_per_day", p.rate},
                      {"before", policy_to_json(*p.prior)}};
        }
      },
      policy.variant());
}

Scenario scenario_from_json(const json& doc, const std::string& base_dir) {
  const std::string where = "scenario";
  reject_unknown(doc, where,
                 {"schema_version", "label", "population_people",
                  "beta_per_day", "theta", "gamma_per_day", "rho_per_day",
                  "initial_state_people", "policy", "horizon_days", "dt_days",
                  "data_path", "start_date"});
  const json& version = require(doc, where, "schema_version");
  if (!version.is_number_integer() ||
      version.get<int>() != kScenarioSchemaVersion) {
    throw ValidationError(where + ": unsupported schema_version (expected " +
                          std::to_string(kScenarioSchemaVersion) + ")");
  }

  Scenario s;
  if (doc.contains("label")) {
    if (!doc.at("label").is_string()) {
      throw ValidationError(where + ".label: expected a string");
    }
    s.label = doc.at("label").get<std::string>();
  }
  s.params.population =
      number(require(doc, where, "population_people"), "population_people");
  s.params.beta =
      schedule_from_json(require(doc, where, "beta_per_day"), "beta_per_day");
  s.params.theta = schedule_from_json(require(doc, where, "theta"), "theta");
  s.params.gamma = number(require(doc, where, "gamma_per_day"), "gamma_per_day");
  s.params.rho = number(require(doc, where, "rho_per_day"), "rho_per_day");

  const json& init = require(doc, where, "initial_state_people");
  const std::string iw = "initial_state_people";
  reject_unknown(init, iw,
                 {"susceptible", "infected", "detected", "recovered", "removed"});
  s.init.susceptible = number(require(init, iw, "susceptible"), iw + ".susceptible");
  s.init.infected = number(require(init, iw, "infected"), iw + ".infected");
  s.init.detected = number(require(init, iw, "detected"), iw + ".detected");
  s.init.recovered = number(require(init, iw, "recovered"), iw + ".recovered");
  s.init.removed = number(require(init, iw, "removed"), iw + ".removed");

  s.horizon_days = number(require(doc, where, "horizon_days"), "horizon_days");
  if (doc.contains("dt_days")) s.dt = number(doc.at("dt_days"), "dt_days");

  PolicyContext ctx;
  ReportedData data;
  if (doc.contains("start_date")) {
    if (!doc.at("start_date").is_string()) {
      throw ValidationError("start_date: expected an ISO date string");
    }
    s.start_date = doc.at("start_date").get<std::string>();
    ctx.start = parse_iso_date(*s.start_date);
  }
  if (doc.contains("data_path")) {
    if (!doc.at("data_path").is_string()) {
      throw ValidationError("data_path: expected a string");
    }
    std::filesystem::path p = doc.at("data_path").get<std::string>();
    if (p.is_relative()) p = std::filesystem::path(base_dir) / p;
    s.data_ref = p.lexically_normal().string();
  }
  const json& policy = require(doc, where, "policy");
  const bool needs_data = policy.is_object() && policy.dump().find("\"from_data\"") != std::string::npos;
  if (needs_data && s.data_ref) {
    data = load_reported(*s.data_ref);
    ctx.data = &data;
  }
  s.policy = policy_from_json(policy, "policy", ctx);
  s.validate();
  return s;
}

json scenario_to_json(const Scenario& s) {
  json doc;
  doc["schema_version"] = kScenarioSchemaVersion;
  doc["label"] = s.label;
  doc["population_people"] = s.params.population;
  doc["beta_per_day"] = schedule_to_json(s.params.beta);
  doc["theta"] = schedule_to_json(s.params.theta);
  doc["gamma_per_day"] = s.params.gamma;
  doc["rho_per_day"] = s.params.rho;
  doc["initial_state_people"] = {{"susceptible", s.init.susceptible},
                                 {"infected", s.init.infected},
                                 {"detected", s.init.detected},
                                 {"recovered", s.init.recovered},
                                 {"removed", s.init.removed}};
  doc["policy"] = policy_to_json(s.policy);
  doc["horizon_days"] = s.horizon_days;
  doc["dt_days"] = s.dt;
  if (s.data_ref) doc["data_path"] = *s.data_ref;
  if (s.start_date) doc["start_date"] = *s.start_date;
  return doc;
}

Scenario load_scenario(const std::string& path) {
  const std::string text = read_text_file(path);
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError("scenario '" + path + "': " + e.what());
  }
  const std::string base =
      std::filesystem::path(path).parent_path().string();
  return scenario_from_json(doc, base.empty() ? "." : base);
}

void save_scenario(const std::string& path, const Scenario& scenario) {
  write_text_file(path, scenario_to_json(scenario).dump(2) + "\n");
}

// ---------------------------------------------------------------------------
// Series CSV

void write_series(const std::string& path,
                  const std::vector<NamedSeries>& series) {
  std::string out = "time,name,value\n";
  for (const auto& s : series) {
    if (s.times.size() != s.values.size()) {
      throw ValidationError("series '" + s.name +
                            "': times and values differ in length");
    }
    for (std::size_t i = 0; i < s.times.size(); ++i) {
      out += format_number(s.times[i]);
      out += ',';
      out += s.name;
      out += ',';
      out += format_number(s.values[i]);
      out += '\n';
    }
  }
  write_text_file(path, out);
}

std::vector<NamedSeries> read_series(const std::string& path) {
  const std::string text = read_text_file(path);
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || trim(line) != "time,name,value") {
    throw ValidationError("series file '" + path + "': bad header");
  }
  std::vector<NamedSeries> out;
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (trim(line).empty()) continue;
    const auto f = split_fields(line);
    double t = 0.0;
    double v = 0.0;
    if (f.size() != 3 || !parse_double(f[0], t) || !parse_double(f[2], v)) {
      throw ValidationError("series file '" + path + "', line " +
                            std::to_string(row) + ": malformed row");
    }
    if (out.empty() || out.back().name != f[1]) {
      out.push_back({std::string(f[1]), {}, {}});
    }
    out.back().times.push_back(t);
    out.back().values.push_back(v);
  }
  return out;
}

}  // namespace sidur
