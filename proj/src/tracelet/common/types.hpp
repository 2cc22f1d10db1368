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

#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>

namespace tracelet {

// Dense integer handle, distinct per tag so region and location ids never mix.
template <class Tag>
struct DenseId {
  std::uint32_t value = 0;

  constexpr auto operator<=>(const DenseId&) const = default;
};

using RegionId = DenseId<struct RegionTag>;
using LocationId = DenseId<struct LocationTag>;

// Nanoseconds since measurement initialization.
struct Timestamp {
  std::uint64_t ns = 0;

  constexpr auto operator<=>(const Timestamp&) const = default;
};

enum class RegionKind : std::uint8_t { kInterpreted = 0, kNative = 1 };

std::string_view to_string(RegionKind kind) noexcept;
// Accepts "interpreted" and "native".
bool parse_region_kind(std::string_view text, RegionKind& out) noexcept;

struct RegionDescriptor {
  RegionId id;
  std::string name;
  std::string group;
  std::string source_file;
  std::uint64_t line_begin = 0;
  RegionKind kind = RegionKind::kInterpreted;

  bool operator==(const RegionDescriptor&) const = default;
};

// "group:name", or just the group for a module body ("<module>").
std::string display_name(const RegionDescriptor& region);

enum class EventKind : std::uint8_t { kEnter, kExit };

struct Event {
  EventKind kind = EventKind::kEnter;
  RegionId region;
  LocationId location;
  Timestamp ts;

  bool operator==(const Event&) const = default;
};

inline constexpr std::string_view kModuleBodyName = "<module>";

}  // namespace tracelet

template <class Tag>
struct std::hash<tracelet::DenseId<Tag>> {
  std::size_t operator()(const tracelet::DenseId<Tag>& id) const noexcept {
    return std::hash<std::uint32_t>{}(id.value);
  }
};
