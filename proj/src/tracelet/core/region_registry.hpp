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

#include <atomic>
#include <deque>
#include <mutex>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "tracelet/common/types.hpp"

namespace tracelet::core {

// Interns region tuples (name, group, file, line, kind) to dense ids in
// first-registration order. Registration is internally synchronized; contains()
// is lock-free so the event path can validate ids cheaply.
class RegionRegistry {
 public:
  RegionId intern(std::string_view name, std::string_view group, std::string_view file,
                  std::uint64_t line, RegionKind kind);

  bool contains(RegionId id) const noexcept {
    return id.value < count_.load(std::memory_order_acquire);
  }
  std::size_t size() const noexcept { return count_.load(std::memory_order_acquire); }

  std::vector<RegionDescriptor> snapshot() const;

 private:
  static std::string make_key(std::string_view name, std::string_view group,
                              std::string_view file, std::uint64_t line, RegionKind kind);

  mutable std::mutex mutex_;
  std::unordered_map<std::string, RegionId> index_;
  std::deque<RegionDescriptor> regions_;
  std::atomic<std::uint32_t> count_{0};
};

}  // namespace tracelet::core
