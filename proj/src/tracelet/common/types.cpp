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

#include "tracelet/common/types.hpp"

namespace tracelet {

std::string_view to_string(RegionKind kind) noexcept {
  return kind == RegionKind::kNative ? "native" : "interpreted";
}

bool parse_region_kind(std::string_view text, RegionKind& out) noexcept {
  if (text == "interpreted") {
    out = RegionKind::kInterpreted;
    return true;
  }
  if (text == "native") {
    out = RegionKind::kNative;
    return true;
  }
  return false;
}

std::string display_name(const RegionDescriptor& region) {
  if (region.name == kModuleBodyName) return region.group;
  std::string out;
  out.reserve(region.group.size() + 1 + region.name.size());
  out += region.group;
  out += ':';
  out += region.name;
  return out;
}

}  // namespace tracelet
