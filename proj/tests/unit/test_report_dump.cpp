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

#include <doctest.h>

#include "tracelet/analysis/dump.hpp"
#include "tracelet/analysis/report.hpp"

using namespace tracelet;
using namespace tracelet::analysis;

namespace {

std::vector<RegionDescriptor> fig2_regions() {
  return {{RegionId{0}, "<module>", "__main__", "run.py", 1, RegionKind::kInterpreted},
          {RegionId{1}, "foo", "__main__", "run.py", 3, RegionKind::kInterpreted},
          {RegionId{2}, "baz", "__main__", "run.py", 1, RegionKind::kInterpreted},
          {RegionId{3}, "print", "builtins", "", 0, RegionKind::kNative}};
}

std::size_t count_lines(const std::string& s) { return std::count(s.begin(), s.end(), '\n'); }

}  // namespace

TEST_CASE("dump of the simple script") {
  trace::TraceArchive a;
  a.regions = fig2_regions();
  trace::LocationStream s{LocationId{0}, "MainThread", {}};
  std::uint64_t t = 100;
  for (std::uint32_t r : {0u, 1u, 2u, 3u}) s.events.push_back({EventKind::kEnter, RegionId{r}, Timestamp{t += 10}});
  for (std::uint32_t r : {3u, 2u, 1u, 0u}) s.events.push_back({EventKind::kExit, RegionId{r}, Timestamp{t += 10}});
  a.locations.push_back(s);

  const auto text = dump_trace(a);
  CHECK(count_lines(text) == 2 + 8);
  CHECK(text.find("# trace: 4 regions, 1 locations\n") == 0);
  CHECK(text.find("# location 0 \"MainThread\": 8 events\n") != std::string::npos);
  CHECK(text.find("           110  ENTER  __main__ (run.py:1)\n") != std::string::npos);
  CHECK(text.find("ENTER  __main__:foo (run.py:3)") != std::string::npos);
  CHECK(text.find("LEAVE  builtins:print (native)") != std::string::npos);
  // Order follows the stream: print is entered before it is left.
  CHECK(text.find("ENTER  builtins:print") < text.find("LEAVE  builtins:print"));
}

TEST_CASE("dump of an empty archive is the header") {
  CHECK(dump_trace({}) == "# trace: 0 regions, 0 locations\n");
}

TEST_CASE("report rows") {
  // A{incl 50, excl 30} / B{incl 20}
  const std::vector<profile::ProfileNode> roots{
      {RegionId{0}, 1, 50, 30, {{RegionId{1}, 1, 20, 20, {}}}}};
  const std::vector<RegionDescriptor> regions{
      {RegionId{0}, "A", "m", "", 0, RegionKind::kInterpreted},
      {RegionId{1}, "B", "m", "", 0, RegionKind::kInterpreted}};

  auto rows = flatten_profile(roots, regions);
  REQUIRE(rows.size() == 2);

  sort_rows(rows, SortKey::kExclusive);
  CHECK(rows[0].path == "m:A");
  CHECK(rows[1].path == "m:A/m:B");

  sort_rows(rows, SortKey::kInclusive);
  CHECK(rows[0].path == "m:A");

  // Tie on visits: lexicographic path order.
  sort_rows(rows, SortKey::kVisits);
  CHECK(rows[0].path == "m:A");
  CHECK(rows[1].path == "m:A/m:B");
}

TEST_CASE("single node table and unnamed regions") {
  const std::vector<profile::ProfileNode> roots{{RegionId{5}, 1, 300, 300, {}}};
  auto rows = flatten_profile(roots, {});
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].path == "#5");
  const auto table = render_table(rows);
  CHECK(count_lines(table) == 2);
  CHECK(table.find("300") != std::string::npos);
  CHECK(render_json(rows).find("\"inclusive_ns\": 300") != std::string::npos);
}

TEST_CASE("ties break by path") {
  std::vector<ReportRow> rows{{"b", 1, 10, 10}, {"a/c", 1, 10, 10}, {"a", 2, 5, 5}};
  sort_rows(rows, SortKey::kInclusive);
  CHECK(rows[0].path == "a/c");
  CHECK(rows[1].path == "b");
  CHECK(rows[2].path == "a");
}

TEST_CASE("sort key names") {
  SortKey k{};
  CHECK(parse_sort_key("visits", k));
  CHECK(k == SortKey::kVisits);
  CHECK_FALSE(parse_sort_key("wall", k));
  CHECK(to_string(SortKey::kExclusive) == "exclusive");
}
