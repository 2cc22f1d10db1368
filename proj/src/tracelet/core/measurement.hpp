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
#include <memory>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <thread>
#include <unordered_map>
#include <vector>

#include "tracelet/common/types.hpp"
#include "tracelet/core/clock.hpp"
#include "tracelet/core/config.hpp"
#include "tracelet/core/region_registry.hpp"

namespace tracelet::core {

inline constexpr const char* kMetadataFile = "metadata.json";

struct Summary {
  std::uint64_t regions = 0;
  std::uint64_t locations = 0;
  std::uint64_t events = 0;              // enter/exit events that were recorded
  std::uint64_t dropped_exits = 0;       // exits without a matching open enter
  std::uint64_t closed_at_finalize = 0;  // enters still open at finalize

  bool operator==(const Summary&) const = default;
};

// One measurement: region registry, per-thread locations, the clock and the
// enabled substrates. The constructor fixes the clock epoch and prepares the
// output directory; finalize() flushes and serializes everything.
//
// register_region() and acquire_location() may be called from any thread.
// enter()/exit() on a location must only come from the thread that owns it.
class Measurement {
 public:
  // Throws Error(kOutputDirUnwritable) if output_dir cannot be created or
  // written, Error(kInvalidArgument) for an invalid config.
  explicit Measurement(MeasurementConfig config);
  ~Measurement();

  Measurement(const Measurement&) = delete;
  Measurement& operator=(const Measurement&) = delete;

  RegionId register_region(std::string_view name, std::string_view group,
                           std::string_view file, std::uint64_t line, RegionKind kind);

  // Returns the calling thread's location, creating it on the first call. The
  // label is only used on creation.
  LocationId acquire_location(std::string_view thread_label);

  Timestamp now() const noexcept { return clock_.now(); }

  // Throws Error(kUnknownLocation) / Error(kUnknownRegion) for invalid ids and
  // Error(kIo) if a full buffer cannot be flushed.
  void enter(LocationId location, RegionId region);
  // An exit that does not match the innermost open region of the location is
  // dropped and counted in Summary::dropped_exits.
  void exit(LocationId location, RegionId region);

  // Throws Error(kNotInitialized) when called a second time.
  Summary finalize();

  bool finalized() const noexcept { return finalized_; }
  const MeasurementConfig& config() const noexcept { return config_; }
  std::size_t region_count() const noexcept { return regions_.size(); }
  std::size_t location_count() const;
  std::vector<RegionDescriptor> regions() const { return regions_.snapshot(); }
  std::int64_t epoch_unix_ns() const noexcept { return clock_.epoch_unix_ns(); }

 private:
  struct Location;

  Location& location(LocationId id) const;
  void record(Location& loc, EventKind kind, RegionId region, Timestamp ts);
  void flush(Location& loc);
  void write_metadata() const;

  MeasurementConfig config_;
  Clock clock_;
  RegionRegistry regions_;

  mutable std::shared_mutex locations_mutex_;
  std::vector<std::unique_ptr<Location>> locations_;
  std::unordered_map<std::thread::id, LocationId> by_thread_;

  bool finalized_ = false;
};

}  // namespace tracelet::core
