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

#include <string>

#include "tracelet/trace/archive.hpp"

namespace tracelet::analysis {

// Human-readable listing: a header line, then per location a heading followed
// by one "ts  ENTER|LEAVE  group:name (file:line)" line per event in stream
// order.
std::string dump_trace(const trace::TraceArchive& archive);

}  // namespace tracelet::analysis
