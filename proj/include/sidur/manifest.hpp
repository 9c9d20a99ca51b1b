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

#ifndef SIDUR_MANIFEST_HPP_
#define SIDUR_MANIFEST_HPP_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace sidur {

inline constexpr const char* kToolVersion = "0.1.0";

// 64-bit FNV-1a.
std::uint64_t fnv1a64(std::string_view bytes);
std::string hex64(std::uint64_t value);

// Hash of a JSON document in its compact, key-sorted serialisation.
std::string parameter_hash(const nlohmann::json& inputs);

struct RunManifest {
  std::string command;
  std::string label;
  std::string parameter_hash;
  std::string tool_version = kToolVersion;
  std::vector<std::string> outputs;  // file names relative to the out dir
  std::string started_utc;
  double wall_clock_seconds = 0.0;

  nlohmann::json to_json() const;
  static RunManifest from_json(const nlohmann::json& doc);
};

std::string utc_timestamp_now();

}  // namespace sidur

#endif  // SIDUR_MANIFEST_HPP_
