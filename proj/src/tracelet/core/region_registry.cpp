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

#include "tracelet/core/region_registry.hpp"

namespace tracelet::core {

std::string RegionRegistry::make_key(std::string_view name, std::string_view group,
                                     std::string_view file, std::uint64_t line,
                                     RegionKind kind) {
  // Length-prefixed fields so no choice of separator can make two tuples collide.
  std::string key;
  key.reserve(name.size() + group.size() + file.size() + 48);
  for (auto part : {name, group, file}) {
    key += std::to_string(part.size());
    key += ':';
    key += part;
  }
  key += std::to_string(line);
  key += '/';
  key += static_cast<char>('0' + static_cast<int>(kind));
  return key;
}

RegionId RegionRegistry::intern(std::string_view name, std::string_view group,
                                std::string_view file, std::uint64_t line, RegionKind kind) {
  auto key = make_key(name, group, file, line, kind);
  std::lock_guard lock(mutex_);
  if (auto it = index_.find(key); it != index_.end()) return it->second;

  const RegionId id{static_cast<std::uint32_t>(regions_.size())};
  regions_.push_back(RegionDescriptor{id, std::string(name), std::string(group),
                                      std::string(file), line, kind});
  index_.emplace(std::move(key), id);
  count_.store(id.value + 1, std::memory_order_release);
  return id;
}

std::vector<RegionDescriptor> RegionRegistry::snapshot() const {
  std::lock_guard lock(mutex_);
  return {regions_.begin(), regions_.end()};
}

}  // namespace tracelet::core
