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

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tracelet/common/types.hpp"
#include "tracelet/profile/call_tree.hpp"

namespace tracelet::analysis {

enum class SortKey { kInclusive, kExclusive, kVisits };

bool parse_sort_key(std::string_view text, SortKey& out) noexcept;
std::string_view to_string(SortKey key) noexcept;

struct ReportRow {
  std::string path;  // display names joined by '/'
  std::uint64_t visits = 0;
  std::uint64_t inclusive_ns = 0;
  std::uint64_t exclusive_ns = 0;

  bool operator==(const ReportRow&) const = default;
};

// One row per call path of the tree. Regions missing from the definitions
// are shown as "#<id>".
std::vector<ReportRow> flatten_profile(std::span<const profile::ProfileNode> roots,
                                       std::span<const RegionDescriptor> regions);

// Descending by key; ties in ascending lexicographic path order.
void sort_rows(std::vector<ReportRow>& rows, SortKey key);

std::string render_table(std::span<const ReportRow> rows);
std::string render_json(std::span<const ReportRow> rows);

}  // namespace tracelet::analysis
