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
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace tracelet::analysis {

// One timed run of a benchmark kernel.
struct BenchmarkSample {
  std::string instrumenter;
  std::string case_label;
  std::uint64_t iterations = 0;
  std::uint32_t repetition = 0;
  double runtime_s = 0.0;

  bool operator==(const BenchmarkSample&) const = default;
};

struct SampleGroup {
  std::string instrumenter;
  std::string case_label;

  bool operator==(const SampleGroup&) const = default;
};

inline constexpr std::string_view kSamplesHeader = "instrumenter,case,iterations,repetition,runtime_s";

// Parses CSV with the fixed header above. Throws Error(kParse) naming
// source_name and the offending line.
std::vector<BenchmarkSample> parse_samples_csv(std::istream& in,
                                               std::string_view source_name = "samples.csv");
std::vector<BenchmarkSample> load_samples_csv(const std::filesystem::path& path);

void write_samples_csv(std::ostream& out, std::span<const BenchmarkSample> samples);

// Distinct (instrumenter, case) pairs in order of first appearance.
std::vector<SampleGroup> distinct_groups(std::span<const BenchmarkSample> samples);

}  // namespace tracelet::analysis
