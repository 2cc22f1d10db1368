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

#include "tracelet/analysis/report.hpp"

#include <algorithm>
#include <unordered_map>

#include <fmt/format.h>
#include <json.hpp>

namespace tracelet::analysis {

bool parse_sort_key(std::string_view text, SortKey& out) noexcept {
  if (text == "inclusive") {
    out = SortKey::kInclusive;
  } else if (text == "exclusive") {
    out = SortKey::kExclusive;
  } else if (text == "visits") {
    out = SortKey::kVisits;
  } else {
    return false;
  }
  return true;
}

std::string_view to_string(SortKey key) noexcept {
  switch (key) {
    case SortKey::kInclusive: return "inclusive";
    case SortKey::kExclusive: return "exclusive";
    case SortKey::kVisits: return "visits";
  }
  return "inclusive";
}

namespace {

using NameMap = std::unordered_map<RegionId, std::string>;

void walk(const profile::ProfileNode& node, const std::string& prefix, const NameMap& names,
          std::vector<ReportRow>& rows) {
  auto it = names.find(node.region);
  const auto name = it != names.end() ? it->second : "#" + std::to_string(node.region.value);
  const auto path = prefix.empty() ? name : prefix + "/" + name;
  rows.push_back({path, node.visits, node.inclusive_ns, node.exclusive_ns});
  for (const auto& c : node.children) walk(c, path, names, rows);
}

std::uint64_t key_of(const ReportRow& row, SortKey key) {
  switch (key) {
    case SortKey::kInclusive: return row.inclusive_ns;
    case SortKey::kExclusive: return row.exclusive_ns;
    case SortKey::kVisits: return row.visits;
  }
  return 0;
}

}  // namespace

std::vector<ReportRow> flatten_profile(std::span<const profile::ProfileNode> roots,
                                       std::span<const RegionDescriptor> regions) {
  NameMap names;
  for (const auto& r : regions) names.emplace(r.id, display_name(r));
  std::vector<ReportRow> rows;
  for (const auto& root : roots) walk(root, "", names, rows);
  return rows;
}

void sort_rows(std::vector<ReportRow>& rows, SortKey key) {
  std::ranges::sort(rows, [key](const ReportRow& a, const ReportRow& b) {
    const auto ka = key_of(a, key);
    const auto kb = key_of(b, key);
    if (ka != kb) return ka > kb;
    return a.path < b.path;
  });
}

std::string render_table(std::span<const ReportRow> rows) {
  std::string out = fmt::format("{:>14}  {:>14}  {:>10}  {}\n", "inclusive_ns", "exclusive_ns",
                                "visits", "call path");
  for (const auto& r : rows) {
    out += fmt::format("{:>14}  {:>14}  {:>10}  {}\n", r.inclusive_ns, r.exclusive_ns, r.visits,
                       r.path);
  }
  return out;
}

std::string render_json(std::span<const ReportRow> rows) {
  nlohmann::ordered_json doc = nlohmann::ordered_json::array();
  for (const auto& r : rows) {
    nlohmann::ordered_json j;
    j["path"] = r.path;
    j["visits"] = r.visits;
    j["inclusive_ns"] = r.inclusive_ns;
    j["exclusive_ns"] = r.exclusive_ns;
    doc.push_back(std::move(j));
  }
  return doc.dump(2) + "\n";
}

}  // namespace tracelet::analysis
