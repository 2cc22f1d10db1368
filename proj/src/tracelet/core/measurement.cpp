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

#include "tracelet/core/measurement.hpp"

#include <algorithm>
#include <fstream>
#include <mutex>
#include <optional>
#include <regex>

#include <json.hpp>

#include "tracelet/common/error.hpp"
#include "tracelet/profile/call_tree.hpp"
#include "tracelet/trace/archive.hpp"

namespace tracelet::core {

namespace fs = std::filesystem;

struct Measurement::Location {
  LocationId id;
  std::string label;
  std::vector<RegionId> open;  // regions entered and not yet exited
  Timestamp last;
  std::uint64_t events = 0;
  std::uint64_t dropped = 0;

  std::vector<trace::TraceEvent> buffer;
  std::unique_ptr<trace::StreamWriter> stream;
  std::optional<profile::Cursor> cursor;
};

namespace {

// Outputs of an earlier run in the same directory would be mistaken for ours.
void remove_stale_outputs(const fs::path& dir) {
  static const std::regex kEventFile(R"(events-\d+\.jsonl)");
  for (const auto& entry : fs::directory_iterator(dir)) {
    const auto name = entry.path().filename().string();
    if (name == trace::kDefinitionsFile || name == profile::kProfileFile ||
        name == kMetadataFile || std::regex_match(name, kEventFile)) {
      fs::remove(entry.path());
    }
  }
}

void prepare_output_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) {
    throw Error(ErrorCode::kOutputDirUnwritable,
                "cannot create output directory " + dir.string() +
                    (ec ? ": " + ec.message() : std::string()));
  }
  const auto probe = dir / ".tracelet-probe";
  {
    std::ofstream out(probe, std::ios::trunc);
    out << "probe";
    if (!out) {
      throw Error(ErrorCode::kOutputDirUnwritable,
                  "output directory is not writable: " + dir.string());
    }
  }
  fs::remove(probe, ec);
  try {
    remove_stale_outputs(dir);
  } catch (const fs::filesystem_error& e) {
    throw Error(ErrorCode::kOutputDirUnwritable, e.what());
  }
}

}  // namespace

Measurement::Measurement(MeasurementConfig config) : config_(std::move(config)) {
  validate(config_);
  prepare_output_dir(config_.output_dir);
}

Measurement::~Measurement() = default;

RegionId Measurement::register_region(std::string_view name, std::string_view group,
                                      std::string_view file, std::uint64_t line,
                                      RegionKind kind) {
  return regions_.intern(name, group, file, line, kind);
}

LocationId Measurement::acquire_location(std::string_view thread_label) {
  const auto self = std::this_thread::get_id();
  {
    std::shared_lock lock(locations_mutex_);
    if (auto it = by_thread_.find(self); it != by_thread_.end()) return it->second;
  }

  auto loc = std::make_unique<Location>();
  loc->label = std::string(thread_label);
  if (config_.substrates.trace) {
    loc->buffer.reserve(config_.buffer_capacity);
  }
  if (config_.substrates.profile) loc->cursor.emplace();

  std::unique_lock lock(locations_mutex_);
  const LocationId id{static_cast<std::uint32_t>(locations_.size())};
  loc->id = id;
  if (config_.substrates.trace) {
    loc->stream = std::make_unique<trace::StreamWriter>(config_.output_dir, id);
  }
  locations_.push_back(std::move(loc));
  by_thread_.emplace(self, id);
  return id;
}

std::size_t Measurement::location_count() const {
  std::shared_lock lock(locations_mutex_);
  return locations_.size();
}

Measurement::Location& Measurement::location(LocationId id) const {
  std::shared_lock lock(locations_mutex_);
  if (id.value >= locations_.size()) {
    throw Error(ErrorCode::kUnknownLocation, "unknown location " + std::to_string(id.value));
  }
  return *locations_[id.value];
}

void Measurement::record(Location& loc, EventKind kind, RegionId region, Timestamp ts) {
  ++loc.events;
  if (!config_.substrates.trace) return;
  loc.buffer.push_back({kind, region, ts});
  if (loc.buffer.size() >= config_.buffer_capacity) flush(loc);
}

void Measurement::flush(Location& loc) {
  if (!loc.stream) return;
  loc.stream->write(loc.buffer);
  loc.buffer.clear();
}

void Measurement::enter(LocationId location_id, RegionId region) {
  if (finalized_) throw Error(ErrorCode::kNotInitialized, "measurement is finalized");
  auto& loc = location(location_id);
  if (!regions_.contains(region)) {
    throw Error(ErrorCode::kUnknownRegion, "unknown region " + std::to_string(region.value));
  }
  const auto ts = std::max(clock_.now(), loc.last);
  loc.last = ts;
  loc.open.push_back(region);
  if (loc.cursor) loc.cursor->enter(region, ts);
  record(loc, EventKind::kEnter, region, ts);
}

void Measurement::exit(LocationId location_id, RegionId region) {
  if (finalized_) throw Error(ErrorCode::kNotInitialized, "measurement is finalized");
  auto& loc = location(location_id);
  if (!regions_.contains(region)) {
    throw Error(ErrorCode::kUnknownRegion, "unknown region " + std::to_string(region.value));
  }
  if (loc.open.empty() || loc.open.back() != region) {
    ++loc.dropped;
    return;
  }
  const auto ts = std::max(clock_.now(), loc.last);
  loc.last = ts;
  loc.open.pop_back();
  if (loc.cursor) loc.cursor->exit(region, ts);
  record(loc, EventKind::kExit, region, ts);
}

Summary Measurement::finalize() {
  if (finalized_) throw Error(ErrorCode::kNotInitialized, "measurement already finalized");
  finalized_ = true;

  const auto end = clock_.now();
  Summary summary;
  summary.regions = regions_.size();

  std::unique_lock lock(locations_mutex_);
  summary.locations = locations_.size();

  std::vector<trace::LocationRecord> records;
  std::vector<profile::LocationTree> trees;
  for (auto& loc : locations_) {
    summary.events += loc->events;
    summary.dropped_exits += loc->dropped;
    summary.closed_at_finalize += loc->open.size();
    records.push_back({loc->id, loc->label});
    if (loc->stream) {
      flush(*loc);
      loc->stream->close();
    }
    if (loc->cursor) {
      loc->cursor->close_open(std::max(end, loc->last));
      trees.push_back({loc->id, loc->label, std::move(*loc->cursor).release()});
    }
  }

  if (!config_.substrates.none()) {
    trace::write_definitions(config_.output_dir, regions_.snapshot(), records);
  }
  if (config_.substrates.profile) {
    profile::write_profile(config_.output_dir / profile::kProfileFile,
                           profile::build_profile(trees));
  }
  write_metadata();
  return summary;
}

void Measurement::write_metadata() const {
  nlohmann::ordered_json doc;
  doc["instrumenter"] = config_.instrumenter_label;
  doc["substrates"] = config_.substrates.names();
  doc["clock_unit"] = "ns";
  doc["epoch_unix_ns"] = clock_.epoch_unix_ns();
  const auto path = config_.output_dir / kMetadataFile;
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << doc.dump() << '\n';
  out.close();
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
}

}  // namespace tracelet::core
