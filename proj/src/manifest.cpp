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

#include "sidur/manifest.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>

#include "sidur/errors.hpp"

namespace sidur {

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex64(std::uint64_t value) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(value));
  return buf;
}

std::string parameter_hash(const nlohmann::json& inputs) {
  return hex64(fnv1a64(inputs.dump()));
}

nlohmann::json RunManifest::to_json() const {
  return {{"command", command},
          {"label", label},
          {"parameter_hash", parameter_hash},
          {"tool_version", tool_version},
          {"outputs", outputs},
          {"started_utc", started_utc},
          {"wall_clock_seconds", wall_clock_seconds}};
}

RunManifest RunManifest::from_json(const nlohmann::json& doc) {
  try {
    RunManifest m;
    m.command = doc.at("command").get<std::string>();
    m.label = doc.at("label").get<std::string>();
    m.parameter_hash = doc.at("parameter_hash").get<std::string>();
    m.tool_version = doc.at("tool_version").get<std::string>();
    m.outputs = doc.at("outputs").get<std::vector<std::string>>();
    m.started_utc = doc.at("started_utc").get<std::string>();
    m.wall_clock_seconds = doc.at("wall_clock_seconds").get<double>();
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("manifest: ") + e.what());
  }
}

std::string utc_timestamp_now() {
  const std::time_t now =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace sidur
