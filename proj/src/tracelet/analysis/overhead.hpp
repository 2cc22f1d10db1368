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
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tracelet/analysis/samples.hpp"

namespace tracelet::analysis {

// runtime = alpha_s + beta_s * iterations
struct OverheadModel {
  double alpha_s = 0.0;  // constant cost per run
  double beta_s = 0.0;   // cost per iteration

  bool operator==(const OverheadModel&) const = default;
};

// Differences a - b in integer picoseconds, so that deltas of decimal inputs
// such as 0.98 us - 0.18 us come out exact.
struct OverheadDelta {
  std::int64_t alpha_ps = 0;
  std::int64_t beta_ps = 0;

  bool operator==(const OverheadDelta&) const = default;
};

// Order-statistic median; for an even count the mean of the two middle values.
// Throws Error(kInsufficientData) on empty input.
double median(std::vector<double> values);

// Ordinary least squares line through (x, y) points. Needs at least two
// distinct x values, else throws Error(kInsufficientData).
OverheadModel fit_line(std::span<const std::pair<double, double>> points);

// Takes the median runtime per iteration count of the selected group and fits
// a line through those medians.
OverheadModel fit_overhead(std::span<const BenchmarkSample> samples,
                           std::string_view instrumenter, std::string_view case_label);

std::int64_t to_picoseconds(double seconds);

OverheadDelta compare_overheads(const OverheadModel& a, const OverheadModel& b);

// "0.58 s & 15.0 us": alpha with two decimals; beta in microseconds with one
// decimal from 1 us upwards and two below.
std::string format_model(const OverheadModel& model);
std::string format_delta(const OverheadDelta& delta);

}  // namespace tracelet::analysis
