// Copyright 2026 The Tracelet Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace tracelet::core {

// Enabled recording substrates. Both flags false is the "none" mode: events
// are still timestamped and paired but nothing is recorded.
struct SubstrateSet {
  bool trace = false;
  bool profile = false;

  bool none() const noexcept { return !trace && !profile; }
  // Canonical names in output order: {"trace", "profile"} or {"none"}.
  std::vector<std::string> names() const;

  bool operator==(const SubstrateSet&) const = default;
};

// Parses a comma list such as "trace,profile" or "none". Whitespace around
// items is ignored. Throws Error(kInvalidArgument) on unknown names, an empty
// list, or "none" combined with a recording substrate.
SubstrateSet parse_substrates(std::string_view list);
SubstrateSet make_substrates(const std::vector<std::string>& names);

struct MeasurementConfig {
  SubstrateSet substrates{.trace = false, .profile = true};
  std::filesystem::path output_dir = "tracelet-out";
  std::string instrumenter_label = "unknown";
  std::size_t buffer_capacity = 4096;
};

using EnvLookup = std::function<std::optional<std::string>(const char*)>;

std::optional<std::string> process_env(const char* name);

// Builds a config from an optional JSON object. Keys absent from the JSON are
// taken from TRACELET_SUBSTRATES / TRACELET_OUT / TRACELET_BUFCAP when set.
MeasurementConfig config_from_json(std::string_view json_text,
                                   const EnvLookup& env = process_env);

void validate(const MeasurementConfig& config);

}  // namespace tracelet::core
