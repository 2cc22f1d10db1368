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

#include <chrono>
#include <cstdint>

#include "tracelet/common/types.hpp"

namespace tracelet::core {

// Monotonic nanosecond clock whose epoch is the moment of construction.
class Clock {
 public:
  Clock()
      : epoch_(std::chrono::steady_clock::now()),
        epoch_unix_ns_(static_cast<std::int64_t>(
            std::chrono::duration_cast<std::chrono::nanoseconds>(
                std::chrono::system_clock::now().time_since_epoch())
                .count())) {}

  Timestamp now() const noexcept {
    const auto elapsed = std::chrono::steady_clock::now() - epoch_;
    return Timestamp{static_cast<std::uint64_t>(
        std::chrono::duration_cast<std::chrono::nanoseconds>(elapsed).count())};
  }

  std::int64_t epoch_unix_ns() const noexcept { return epoch_unix_ns_; }

 private:
  std::chrono::steady_clock::time_point epoch_;
  std::int64_t epoch_unix_ns_;
};

}  // namespace tracelet::core
