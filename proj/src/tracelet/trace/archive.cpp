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

#include "tracelet/trace/archive.hpp"

#include <charconv>
#include <fstream>
#include <limits>
#include <regex>
#include <sstream>
#include <unordered_set>

#include <json.hpp>

#include "tracelet/common/error.hpp"

namespace tracelet::trace {

namespace fs = std::filesystem;
using nlohmann::json;
using nlohmann::ordered_json;

std::string event_file_name(LocationId location) {
  return "events-" + std::to_string(location.value) + ".jsonl";
}

void append_event_line(std::string& out, const TraceEvent& event) {
  char digits[24];
  out += event.kind == EventKind::kEnter ? R"({"k":"E","r":)" : R"({"k":"L","r":)";
  auto res = std::to_chars(digits, digits + sizeof digits, event.region.value);
  out.append(digits, res.ptr);
  out += R"(,"t":)";
  res = std::to_chars(digits, digits + sizeof digits, event.ts.ns);
  out.append(digits, res.ptr);
  out += "}\n";
}

StreamWriter::StreamWriter(fs::path dir, LocationId location)
    : path_(std::move(dir) / event_file_name(location)) {}

StreamWriter::~StreamWriter() {
  if (file_ != nullptr) std::fclose(file_);
}

void StreamWriter::write(std::span<const TraceEvent> events) {
  if (events.empty()) return;
  if (file_ == nullptr) {
    file_ = std::fopen(path_.c_str(), "wb");
    if (file_ == nullptr) throw Error(ErrorCode::kIo, "cannot open " + path_.string());
  }
  scratch_.clear();
  for (const auto& e : events) append_event_line(scratch_, e);
  if (std::fwrite(scratch_.data(), 1, scratch_.size(), file_) != scratch_.size() ||
      std::fflush(file_) != 0) {
    throw Error(ErrorCode::kIo, "short write to " + path_.string());
  }
  lines_ += events.size();
}

void StreamWriter::close() {
  if (file_ == nullptr) return;
  const bool ok = std::fclose(file_) == 0;
  file_ = nullptr;
  if (!ok) throw Error(ErrorCode::kIo, "cannot close " + path_.string());
}

namespace {

void write_text_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
  out.close();
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
}

ordered_json region_json(const RegionDescriptor& r) {
  ordered_json j;
  j["id"] = r.id.value;
  j["name"] = r.name;
  j["group"] = r.group;
  j["file"] = r.source_file;
  j["line"] = r.line_begin;
  j["kind"] = std::string(to_string(r.kind));
  return j;
}

[[noreturn]] void parse_error(const fs::path& file, std::size_t line, const std::string& what) {
  std::string msg = file.filename().string();
  if (line > 0) msg += ":" + std::to_string(line);
  throw Error(ErrorCode::kParse, msg + ": " + what);
}

std::uint64_t require_unsigned(const json& obj, const char* key, const fs::path& file,
                               std::size_t line) {
  auto it = obj.find(key);
  if (it == obj.end() || !it->is_number_unsigned()) {
    parse_error(file, line, std::string("field '") + key + "' must be a non-negative integer");
  }
  return it->get<std::uint64_t>();
}

std::string require_string(const json& obj, const char* key, const fs::path& file,
                           std::size_t line) {
  auto it = obj.find(key);
  if (it == obj.end() || !it->is_string()) {
    parse_error(file, line, std::string("field '") + key + "' must be a string");
  }
  return it->get<std::string>();
}

std::uint32_t narrow_id(std::uint64_t value, const fs::path& file, std::size_t line) {
  if (value > std::numeric_limits<std::uint32_t>::max()) parse_error(file, line, "id out of range");
  return static_cast<std::uint32_t>(value);
}

std::vector<TraceEvent> read_event_file(const fs::path& path,
                                        const std::unordered_set<RegionId>& regions) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  std::vector<TraceEvent> events;
  std::string text;
  std::size_t line_no = 0;
  while (std::getline(in, text)) {
    ++line_no;
    auto obj = json::parse(text, nullptr, false);
    if (obj.is_discarded() || !obj.is_object()) parse_error(path, line_no, "not a JSON object");
    if (obj.size() != 3) parse_error(path, line_no, "expected exactly the fields k, r, t");

    TraceEvent event;
    const auto kind = require_string(obj, "k", path, line_no);
    if (kind == "E") {
      event.kind = EventKind::kEnter;
    } else if (kind == "L") {
      event.kind = EventKind::kExit;
    } else {
      parse_error(path, line_no, "unknown event kind '" + kind + "'");
    }
    event.region = RegionId{narrow_id(require_unsigned(obj, "r", path, line_no), path, line_no)};
    if (!regions.contains(event.region)) {
      parse_error(path, line_no,
                  "event references undefined region " + std::to_string(event.region.value));
    }
    event.ts = Timestamp{require_unsigned(obj, "t", path, line_no)};
    events.push_back(event);
  }
  return events;
}

}  // namespace

void write_definitions(const fs::path& dir, std::span<const RegionDescriptor> regions,
                       std::span<const LocationRecord> locations) {
  ordered_json doc;
  doc["regions"] = ordered_json::array();
  for (const auto& r : regions) doc["regions"].push_back(region_json(r));
  doc["locations"] = ordered_json::array();
  for (const auto& l : locations) {
    ordered_json j;
    j["id"] = l.id.value;
    j["label"] = l.label;
    doc["locations"].push_back(std::move(j));
  }
  write_text_file(dir / kDefinitionsFile, doc.dump() + "\n");
}

void write_archive(const fs::path& dir, const TraceArchive& archive) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::kIo, "cannot create " + dir.string() + ": " + ec.message());

  std::vector<LocationRecord> records;
  records.reserve(archive.locations.size());
  for (const auto& loc : archive.locations) {
    records.push_back({loc.id, loc.label});
    StreamWriter writer(dir, loc.id);
    writer.write(loc.events);
    writer.close();
  }
  write_definitions(dir, archive.regions, records);
}

TraceArchive read_definitions(const fs::path& dir) {
  const auto defs_path = dir / kDefinitionsFile;
  std::ifstream in(defs_path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + defs_path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();

  auto doc = json::parse(buffer.str(), nullptr, false);
  if (doc.is_discarded() || !doc.is_object()) parse_error(defs_path, 0, "not a JSON object");
  auto regions_it = doc.find("regions");
  auto locations_it = doc.find("locations");
  if (regions_it == doc.end() || !regions_it->is_array()) {
    parse_error(defs_path, 0, "missing 'regions' array");
  }
  if (locations_it == doc.end() || !locations_it->is_array()) {
    parse_error(defs_path, 0, "missing 'locations' array");
  }

  TraceArchive archive;
  std::unordered_set<RegionId> region_ids;
  std::unordered_set<LocationId> location_ids;
  for (std::size_t i = 0; i < regions_it->size(); ++i) {
    const auto& r = (*regions_it)[i];
    const std::string where = "regions[" + std::to_string(i) + "]";
    if (!r.is_object()) parse_error(defs_path, 0, where + " is not an object");
    RegionDescriptor desc;
    desc.id = RegionId{narrow_id(require_unsigned(r, "id", defs_path, 0), defs_path, 0)};
    desc.name = require_string(r, "name", defs_path, 0);
    desc.group = require_string(r, "group", defs_path, 0);
    desc.source_file = require_string(r, "file", defs_path, 0);
    desc.line_begin = require_unsigned(r, "line", defs_path, 0);
    if (!parse_region_kind(require_string(r, "kind", defs_path, 0), desc.kind)) {
      parse_error(defs_path, 0, where + " has an unknown kind");
    }
    if (!region_ids.insert(desc.id).second) {
      parse_error(defs_path, 0, "duplicate region id " + std::to_string(desc.id.value));
    }
    archive.regions.push_back(std::move(desc));
  }

  for (const auto& l : *locations_it) {
    if (!l.is_object()) parse_error(defs_path, 0, "location entry is not an object");
    LocationStream stream;
    stream.id = LocationId{narrow_id(require_unsigned(l, "id", defs_path, 0), defs_path, 0)};
    stream.label = require_string(l, "label", defs_path, 0);
    if (!location_ids.insert(stream.id).second) {
      parse_error(defs_path, 0, "duplicate location id " + std::to_string(stream.id.value));
    }
    archive.locations.push_back(std::move(stream));
  }
  return archive;
}

TraceArchive read_archive(const fs::path& dir) {
  auto archive = read_definitions(dir);
  std::unordered_set<RegionId> region_ids;
  for (const auto& r : archive.regions) region_ids.insert(r.id);
  std::unordered_set<LocationId> location_ids;
  for (auto& loc : archive.locations) {
    location_ids.insert(loc.id);
    const auto events_path = dir / event_file_name(loc.id);
    if (fs::exists(events_path)) loc.events = read_event_file(events_path, region_ids);
  }

  static const std::regex kEventFile(R"(events-(\d+)\.jsonl)");
  for (const auto& entry : fs::directory_iterator(dir)) {
    std::smatch m;
    const auto name = entry.path().filename().string();
    if (!std::regex_match(name, m, kEventFile)) continue;
    const auto id = std::stoull(m[1].str());
    if (id > std::numeric_limits<std::uint32_t>::max() ||
        !location_ids.contains(LocationId{static_cast<std::uint32_t>(id)}) ||
        name != event_file_name(LocationId{static_cast<std::uint32_t>(id)})) {
      parse_error(entry.path(), 0, "event file of an undefined location");
    }
  }
  return archive;
}

std::vector<MonotonicityViolation> find_timestamp_violations(const TraceArchive& archive) {
  std::vector<MonotonicityViolation> out;
  for (const auto& loc : archive.locations) {
    for (std::size_t i = 1; i < loc.events.size(); ++i) {
      if (loc.events[i].ts < loc.events[i - 1].ts) out.push_back({loc.id, i});
    }
  }
  return out;
}

}  // namespace tracelet::trace
