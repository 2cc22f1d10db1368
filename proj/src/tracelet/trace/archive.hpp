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

#include <cstdio>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "tracelet/common/types.hpp"

// On-disk trace layout:
//   definitions.json      regions and locations
//   events-<loc>.jsonl    one {"k":"E"|"L","r":<region>,"t":<ns>} object per line
// A location that recorded no events has no event file.
namespace tracelet::trace {

inline constexpr const char* kDefinitionsFile = "definitions.json";

struct TraceEvent {
  EventKind kind = EventKind::kEnter;
  RegionId region;
  Timestamp ts;

  bool operator==(const TraceEvent&) const = default;
};

struct LocationRecord {
  LocationId id;
  std::string label;

  bool operator==(const LocationRecord&) const = default;
};

struct LocationStream {
  LocationId id;
  std::string label;
  std::vector<TraceEvent> events;

  bool operator==(const LocationStream&) const = default;
};

struct TraceArchive {
  std::vector<RegionDescriptor> regions;
  std::vector<LocationStream> locations;

  bool operator==(const TraceArchive&) const = default;
};

std::string event_file_name(LocationId location);

// Appends one event line, terminated by LF.
void append_event_line(std::string& out, const TraceEvent& event);

// Append-only writer for one location's event file. The file is created on the
// first write, so a location without events leaves no file behind.
class StreamWriter {
 public:
  StreamWriter(std::filesystem::path dir, LocationId location);
  ~StreamWriter();

  StreamWriter(const StreamWriter&) = delete;
  StreamWriter& operator=(const StreamWriter&) = delete;

  void write(std::span<const TraceEvent> events);
  void close();

  std::uint64_t lines_written() const noexcept { return lines_; }

 private:
  std::filesystem::path path_;
  std::FILE* file_ = nullptr;
  std::string scratch_;
  std::uint64_t lines_ = 0;
};

void write_definitions(const std::filesystem::path& dir, std::span<const RegionDescriptor> regions,
                       std::span<const LocationRecord> locations);

// Writes definitions.json plus one event file per non-empty location.
void write_archive(const std::filesystem::path& dir, const TraceArchive& archive);

// Parses only definitions.json; every location comes back with no events.
TraceArchive read_definitions(const std::filesystem::path& dir);

// Parses an archive directory. Throws Error(kParse) naming the file and line of
// the first malformed record, including events that reference undefined
// regions and event files of undefined locations.
TraceArchive read_archive(const std::filesystem::path& dir);

struct MonotonicityViolation {
  LocationId location;
  std::size_t index = 0;  // position of the event whose ts went backwards
};

std::vector<MonotonicityViolation> find_timestamp_violations(const TraceArchive& archive);

}  // namespace tracelet::trace
