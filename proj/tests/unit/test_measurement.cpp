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

#include <fstream>
#include <random>
#include <thread>

#include <doctest.h>
#include <json.hpp>

#include "test_support.hpp"
#include "tracelet/common/error.hpp"
#include "tracelet/core/measurement.hpp"
#include "tracelet/profile/call_tree.hpp"
#include "tracelet/trace/archive.hpp"

using namespace tracelet;
using core::Measurement;
using core::MeasurementConfig;
using core::SubstrateSet;
using testing::TempDir;

namespace fs = std::filesystem;

namespace {

MeasurementConfig make_config(const fs::path& dir, SubstrateSet substrates,
                              std::size_t capacity = 4096) {
  MeasurementConfig c;
  c.substrates = substrates;
  c.output_dir = dir;
  c.instrumenter_label = "cprofile-hook";
  c.buffer_capacity = capacity;
  return c;
}

constexpr SubstrateSet kBoth{true, true};

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::kOk;
}

// The simple script from the trace figure: module body calls foo, foo calls
// baz, baz calls the print builtin.
struct Fig2Regions {
  RegionId module, foo, baz, print;
};

Fig2Regions run_fig2(Measurement& m, LocationId loc) {
  Fig2Regions r{
      m.register_region("<module>", "__main__", "run.py", 1, RegionKind::kInterpreted),
      m.register_region("foo", "__main__", "run.py", 3, RegionKind::kInterpreted),
      m.register_region("baz", "__main__", "run.py", 1, RegionKind::kInterpreted),
      m.register_region("print", "builtins", "", 0, RegionKind::kNative)};
  m.enter(loc, r.module);
  m.enter(loc, r.foo);
  m.enter(loc, r.baz);
  m.enter(loc, r.print);
  m.exit(loc, r.print);
  m.exit(loc, r.baz);
  m.exit(loc, r.foo);
  m.exit(loc, r.module);
  return r;
}

std::vector<std::string> files_in(const fs::path& dir) {
  std::vector<std::string> names;
  for (const auto& e : fs::directory_iterator(dir)) names.push_back(e.path().filename().string());
  std::sort(names.begin(), names.end());
  return names;
}

std::size_t line_count(const fs::path& file) {
  std::ifstream in(file);
  std::size_t n = 0;
  std::string line;
  while (std::getline(in, line)) ++n;
  return n;
}

}  // namespace

TEST_CASE("init starts from an empty state") {
  TempDir tmp;
  Measurement m(make_config(tmp / "out", {false, true}));
  CHECK(m.region_count() == 0);
  CHECK(m.location_count() == 0);
  CHECK(fs::is_directory(tmp / "out"));
}

TEST_CASE("an output directory that cannot be created is reported") {
  TempDir tmp;
  std::ofstream(tmp / "blocker") << "x";
  CHECK(code_of([&] { Measurement m(make_config(tmp / "blocker" / "out", kBoth)); }) ==
        ErrorCode::kOutputDirUnwritable);
}

TEST_CASE("locations are per thread and dense") {
  TempDir tmp;
  Measurement m(make_config(tmp.path(), kBoth));
  CHECK(m.acquire_location("MainThread").value == 0);
  CHECK(m.acquire_location("MainThread").value == 0);
  std::uint32_t other = 99;
  std::thread([&] { other = m.acquire_location("Thread-1").value; }).join();
  CHECK(other == 1);
  CHECK(m.location_count() == 2);
}

TEST_CASE("clock starts near zero and never goes backwards") {
  TempDir tmp;
  Measurement m(make_config(tmp.path(), kBoth));
  const auto t1 = m.now();
  const auto t2 = m.now();
  CHECK(t2 >= t1);
  CHECK(t1.ns < 1'000'000'000ULL);
}

TEST_CASE("enter and exit produce an ordered stream") {
  TempDir tmp;
  Measurement m(make_config(tmp.path(), {true, false}));
  const auto loc = m.acquire_location("MainThread");
  const auto foo = m.register_region("foo", "__main__", "run.py", 3, RegionKind::kInterpreted);
  m.enter(loc, foo);
  m.exit(loc, foo);
  const auto summary = m.finalize();
  CHECK(summary.events == 2);

  const auto archive = trace::read_archive(tmp.path());
  REQUIRE(archive.locations.size() == 1);
  const auto& events = archive.locations[0].events;
  REQUIRE(events.size() == 2);
  CHECK(events[0].kind == EventKind::kEnter);
  CHECK(events[1].kind == EventKind::kExit);
  CHECK(events[0].region == foo);
  CHECK(events[1].ts >= events[0].ts);
}

TEST_CASE("an exit without a matching enter is dropped") {
  TempDir tmp;
  Measurement m(make_config(tmp.path(), kBoth));
  const auto loc = m.acquire_location("MainThread");
  const auto foo = m.register_region("foo", "__main__", "run.py", 3, RegionKind::kInterpreted);
  const auto bar = m.register_region("bar", "__main__", "run.py", 9, RegionKind::kInterpreted);
  m.exit(loc, foo);

  SUBCASE("on an empty stack") {
    const auto summary = m.finalize();
    CHECK(summary.events == 0);
    CHECK(summary.dropped_exits == 1);
    CHECK_FALSE(fs::exists(tmp / "events-0.jsonl"));
  }
  SUBCASE("when it does not name the innermost region") {
    m.enter(loc, foo);
    m.exit(loc, bar);
    m.exit(loc, foo);
    const auto summary = m.finalize();
    CHECK(summary.events == 2);
    CHECK(summary.dropped_exits == 2);
  }
}

TEST_CASE("invalid ids are rejected") {
  TempDir tmp;
  Measurement m(make_config(tmp.path(), kBoth));
  const auto loc = m.acquire_location("MainThread");
  const auto foo = m.register_region("foo", "__main__", "run.py", 3, RegionKind::kInterpreted);
  CHECK(code_of([&] { m.enter(loc, RegionId{7}); }) == ErrorCode::kUnknownRegion);
  CHECK(code_of([&] { m.exit(loc, RegionId{7}); }) == ErrorCode::kUnknownRegion);
  CHECK(code_of([&] { m.enter(LocationId{3}, foo); }) == ErrorCode::kUnknownLocation);
}

TEST_CASE("finalize of an idle measurement") {
  TempDir tmp;
  Measurement m(make_config(tmp.path(), kBoth));
  const auto summary = m.finalize();
  CHECK(summary == core::Summary{});
  CHECK(code_of([&] { m.finalize(); }) == ErrorCode::kNotInitialized);
  CHECK(files_in(tmp.path()) ==
        std::vector<std::string>{"definitions.json", "metadata.json", "profile.json"});

  const auto archive = trace::read_archive(tmp.path());
  CHECK(archive.regions.empty());
}

TEST_CASE("events after finalize are refused") {
  TempDir tmp;
  Measurement m(make_config(tmp.path(), kBoth));
  const auto loc = m.acquire_location("MainThread");
  const auto foo = m.register_region("foo", "__main__", "run.py", 3, RegionKind::kInterpreted);
  m.finalize();
  CHECK(code_of([&] { m.enter(loc, foo); }) == ErrorCode::kNotInitialized);
}

TEST_CASE("simple script scenario") {
  TempDir tmp;
  Measurement m(make_config(tmp.path(), kBoth));
  const auto loc = m.acquire_location("MainThread");
  const auto r = run_fig2(m, loc);
  const auto summary = m.finalize();

  // Hand simulation: four regions, each entered and left once.
  CHECK(summary.regions == 4);
  CHECK(summary.locations == 1);
  CHECK(summary.events == 8);
  CHECK(summary.dropped_exits == 0);
  CHECK(summary.closed_at_finalize == 0);

  CHECK(line_count(tmp / "events-0.jsonl") == 8);
  const auto profile = profile::read_profile(tmp / "profile.json");
  REQUIRE(profile.children.size() == 1);
  const auto* node = &profile.children[0];
  for (auto expected : {r.module, r.foo, r.baz, r.print}) {
    CHECK(node->region == expected);
    CHECK(node->visits == 1);
    if (expected == r.print) {
      CHECK(node->children.empty());
      break;
    }
    REQUIRE(node->children.size() == 1);
    node = &node->children[0];
  }
}

TEST_CASE("none mode keeps the event flow but writes only metadata") {
  TempDir tmp;
  Measurement m(make_config(tmp.path(), SubstrateSet{}));
  const auto loc = m.acquire_location("MainThread");
  run_fig2(m, loc);
  const auto summary = m.finalize();
  CHECK(summary.events == 8);
  CHECK(files_in(tmp.path()) == std::vector<std::string>{"metadata.json"});

  std::ifstream in(tmp / "metadata.json");
  const auto meta = nlohmann::json::parse(in);
  CHECK(meta.at("instrumenter") == "cprofile-hook");
  CHECK(meta.at("substrates") == nlohmann::json::array({"none"}));
  CHECK(meta.at("clock_unit") == "ns");
  CHECK(meta.at("epoch_unix_ns").get<std::int64_t>() > 0);
}

TEST_CASE("outputs of an earlier run are cleared at init") {
  TempDir tmp;
  std::ofstream(tmp / "events-5.jsonl") << R"({"k":"E","r":0,"t":1})" << '\n';
  std::ofstream(tmp / "profile.json") << "{}";
  std::ofstream(tmp / "notes.txt") << "keep me";
  Measurement m(make_config(tmp.path(), SubstrateSet{}));
  CHECK(files_in(tmp.path()) == std::vector<std::string>{"notes.txt"});
}

TEST_CASE("full buffers are flushed before finalize") {
  TempDir tmp;
  Measurement m(make_config(tmp.path(), {true, false}, 3));
  const auto loc = m.acquire_location("MainThread");
  const auto foo = m.register_region("foo", "m", "", 0, RegionKind::kInterpreted);
  for (int i = 0; i < 5; ++i) {
    m.enter(loc, foo);
    m.exit(loc, foo);
  }
  CHECK(line_count(tmp / "events-0.jsonl") == 9);
  m.finalize();
  CHECK(line_count(tmp / "events-0.jsonl") == 10);
}

TEST_CASE("open regions are closed in the profile at finalize") {
  TempDir tmp;
  Measurement m(make_config(tmp.path(), kBoth));
  const auto loc = m.acquire_location("MainThread");
  const auto a = m.register_region("a", "m", "", 0, RegionKind::kInterpreted);
  const auto b = m.register_region("b", "m", "", 0, RegionKind::kInterpreted);
  m.enter(loc, a);
  m.enter(loc, b);
  const auto summary = m.finalize();
  CHECK(summary.events == 2);
  CHECK(summary.closed_at_finalize == 2);
  CHECK(line_count(tmp / "events-0.jsonl") == 2);

  const auto profile = profile::read_profile(tmp / "profile.json");
  REQUIRE(profile.children.size() == 1);
  CHECK(profile.children[0].visits == 1);
  REQUIRE(profile.children[0].children.size() == 1);
  CHECK(profile.children[0].children[0].visits == 1);
  CHECK(profile.children[0].inclusive_ns >= profile.children[0].children[0].inclusive_ns);
}

TEST_CASE("property: trace events equal twice the profile visits minus open enters") {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 25; ++trial) {
    TempDir tmp;
    Measurement m(make_config(tmp.path(), kBoth, 16));
    const auto loc = m.acquire_location("MainThread");
    std::vector<RegionId> regions;
    for (int i = 0; i < 6; ++i) {
      regions.push_back(m.register_region("r" + std::to_string(i), "m", "", 0,
                                          RegionKind::kInterpreted));
    }
    // Brute-force model of the core's pairing rule.
    std::vector<RegionId> open;
    std::uint64_t matched = 0;
    std::uniform_int_distribution<int> pick(0, 5);
    std::uniform_int_distribution<int> action(0, 9);
    for (int step = 0; step < 300; ++step) {
      const auto r = regions[pick(rng)];
      const int a = action(rng);
      if (a < 5) {
        m.enter(loc, r);
        open.push_back(r);
      } else {
        // Mostly well-formed exits, sometimes a stray one.
        const auto target = (a < 9 && !open.empty()) ? open.back() : r;
        m.exit(loc, target);
        if (!open.empty() && open.back() == target) {
          open.pop_back();
          ++matched;
        }
      }
    }
    const auto summary = m.finalize();
    CHECK(summary.closed_at_finalize == open.size());

    const auto counts = testing::count_trace_events(tmp.path());
    const auto table = testing::flatten_profile_file(tmp / "profile.json");
    std::uint64_t visits = 0;
    for (const auto& [path, stats] : table) visits += stats.visits;
    CHECK(visits == matched + open.size());
    CHECK(counts.enters + counts.exits == 2 * visits - open.size());
    CHECK(counts.enters + counts.exits == summary.events);
  }
}

TEST_CASE("threads record into their own locations") {
  TempDir tmp;
  Measurement m(make_config(tmp.path(), kBoth, 64));
  const auto work = m.register_region("work", "worker", "w.py", 1, RegionKind::kInterpreted);
  constexpr int kThreads = 4;
  constexpr int kCalls = 1000;
  std::vector<std::thread> pool;
  for (int t = 0; t < kThreads; ++t) {
    pool.emplace_back([&, t] {
      const auto loc = m.acquire_location("Thread-" + std::to_string(t));
      for (int i = 0; i < kCalls; ++i) {
        m.enter(loc, work);
        m.exit(loc, work);
      }
    });
  }
  for (auto& th : pool) th.join();
  const auto summary = m.finalize();
  CHECK(summary.locations == kThreads);
  CHECK(summary.events == 2 * kThreads * kCalls);

  const auto archive = trace::read_archive(tmp.path());
  CHECK(archive.locations.size() == kThreads);
  CHECK(trace::find_timestamp_violations(archive).empty());

  const auto profile = profile::read_profile(tmp / "profile.json");
  REQUIRE(profile.children.size() == 1);
  CHECK(profile.children[0].visits == kThreads * kCalls);
  CHECK(profile.per_location.size() == kThreads);
  for (const auto& lp : profile.per_location) {
    REQUIRE(lp.children.size() == 1);
    CHECK(lp.children[0].visits == kCalls);
  }
}
