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

#include "tracelet/core/config.hpp"

#include <charconv>
#include <cstdlib>

#include <json.hpp>

#include "tracelet/common/error.hpp"

namespace tracelet::core {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

std::size_t parse_capacity(std::string_view text) {
  std::size_t value = 0;
  text = trim(text);
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || value == 0) {
    throw Error(ErrorCode::kInvalidArgument,
                "buffer capacity must be a positive integer, got '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace

std::vector<std::string> SubstrateSet::names() const {
  if (none()) return {"none"};
  std::vector<std::string> out;
  if (trace) out.emplace_back("trace");
  if (profile) out.emplace_back("profile");
  return out;
}

SubstrateSet make_substrates(const std::vector<std::string>& names) {
  SubstrateSet set;
  bool saw_none = false;
  for (const auto& raw : names) {
    const auto name = trim(raw);
    if (name == "trace") {
      set.trace = true;
    } else if (name == "profile") {
      set.profile = true;
    } else if (name == "none") {
      saw_none = true;
    } else {
      throw Error(ErrorCode::kInvalidArgument, "unknown substrate '" + std::string(name) + "'");
    }
  }
  if (names.empty()) throw Error(ErrorCode::kInvalidArgument, "substrate list is empty");
  if (saw_none && !set.none()) {
    throw Error(ErrorCode::kInvalidArgument, "substrate 'none' cannot be combined with others");
  }
  return set;
}

SubstrateSet parse_substrates(std::string_view list) {
  std::vector<std::string> names;
  while (true) {
    const auto comma = list.find(',');
    const auto item = trim(list.substr(0, comma));
    if (!item.empty()) names.emplace_back(item);
    if (comma == std::string_view::npos) break;
    list.remove_prefix(comma + 1);
  }
  return make_substrates(names);
}

std::optional<std::string> process_env(const char* name) {
  if (const char* value = std::getenv(name); value != nullptr) return std::string(value);
  return std::nullopt;
}

MeasurementConfig config_from_json(std::string_view json_text, const EnvLookup& env) {
  using nlohmann::json;
  json doc = json::object();
  if (!trim(json_text).empty()) {
    doc = json::parse(json_text.begin(), json_text.end(), nullptr, false);
    if (doc.is_discarded() || !doc.is_object()) {
      throw Error(ErrorCode::kInvalidArgument, "measurement config must be a JSON object");
    }
  }

  MeasurementConfig config;
  try {
    if (doc.contains("substrates")) {
      const auto& value = doc.at("substrates");
      config.substrates = value.is_string() ? parse_substrates(value.get<std::string>())
                                            : make_substrates(value.get<std::vector<std::string>>());
    } else if (auto text = env("TRACELET_SUBSTRATES")) {
      config.substrates = parse_substrates(*text);
    }

    if (doc.contains("output_dir")) {
      config.output_dir = doc.at("output_dir").get<std::string>();
    } else if (auto text = env("TRACELET_OUT"); text && !text->empty()) {
      config.output_dir = *text;
    }

    if (doc.contains("instrumenter")) {
      config.instrumenter_label = doc.at("instrumenter").get<std::string>();
    }

    if (doc.contains("buffer_capacity")) {
      const auto& value = doc.at("buffer_capacity");
      if (!value.is_number_unsigned() || value.get<std::size_t>() == 0) {
        throw Error(ErrorCode::kInvalidArgument, "buffer_capacity must be a positive integer");
      }
      config.buffer_capacity = value.get<std::size_t>();
    } else if (auto text = env("TRACELET_BUFCAP")) {
      config.buffer_capacity = parse_capacity(*text);
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kInvalidArgument, std::string("measurement config: ") + e.what());
  }
  validate(config);
  return config;
}

void validate(const MeasurementConfig& config) {
  if (config.buffer_capacity == 0) {
    throw Error(ErrorCode::kInvalidArgument, "buffer_capacity must be >= 1");
  }
  if (config.output_dir.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "output_dir must not be empty");
  }
}

}  // namespace tracelet::core
