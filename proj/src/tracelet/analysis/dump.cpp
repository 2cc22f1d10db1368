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

#include "tracelet/analysis/dump.hpp"

#include <unordered_map>

#include <fmt/format.h>

namespace tracelet::analysis {

namespace {

std::string source_of(const RegionDescriptor& r) {
  if (r.source_file.empty()) return r.kind == RegionKind::kNative ? "native" : "unknown";
  return fmt::format("{}:{}", r.source_file, r.line_begin);
}

}  // namespace

std::string dump_trace(const trace::TraceArchive& archive) {
  std::unordered_map<RegionId, const RegionDescriptor*> by_id;
  for (const auto& r : archive.regions) by_id.emplace(r.id, &r);

  std::string out = fmt::format("# trace: {} regions, {} locations\n", archive.regions.size(),
                                archive.locations.size());
  for (const auto& loc : archive.locations) {
    out += fmt::format("# location {} \"{}\": {} events\n", loc.id.value, loc.label,
                       loc.events.size());
    for (const auto& e : loc.events) {
      const char* what = e.kind == EventKind::kEnter ? "ENTER" : "LEAVE";
      // The reader guarantees every region is defined.
      const auto& region = *by_id.at(e.region);
      out += fmt::format("{:>14}  {}  {} ({})\n", e.ts.ns, what, display_name(region),
                         source_of(region));
    }
  }
  return out;
}

}  // namespace tracelet::analysis
