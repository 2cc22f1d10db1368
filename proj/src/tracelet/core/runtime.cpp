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

#include "tracelet/core/runtime.hpp"

#include <atomic>
#include <memory>
#include <mutex>

#include "tracelet/common/error.hpp"

namespace tracelet::core::runtime {

namespace {

std::mutex g_lifecycle;
std::unique_ptr<Measurement> g_owner;
std::atomic<Measurement*> g_active{nullptr};

}  // namespace

void init(MeasurementConfig config) {
  std::lock_guard lock(g_lifecycle);
  if (g_owner) throw Error(ErrorCode::kAlreadyInitialized, "a measurement is already active");
  g_owner = std::make_unique<Measurement>(std::move(config));
  g_active.store(g_owner.get(), std::memory_order_release);
}

Measurement* active_or_null() noexcept { return g_active.load(std::memory_order_acquire); }

Measurement& active() {
  auto* m = active_or_null();
  if (m == nullptr) throw Error(ErrorCode::kNotInitialized, "no active measurement");
  return *m;
}

Summary finalize() {
  std::lock_guard lock(g_lifecycle);
  if (!g_owner) throw Error(ErrorCode::kNotInitialized, "no active measurement");
  g_active.store(nullptr, std::memory_order_release);
  auto owner = std::move(g_owner);
  return owner->finalize();
}

}  // namespace tracelet::core::runtime
