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

#include "tracelet/analysis/overhead.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include <fmt/format.h>

#include "tracelet/common/error.hpp"

namespace tracelet::analysis {

double median(std::vector<double> values) {
  if (values.empty()) throw Error(ErrorCode::kInsufficientData, "median of an empty set");
  const auto n = values.size();
  const auto upper = values.begin() + static_cast<std::ptrdiff_t>(n / 2);
  std::nth_element(values.begin(), upper, values.end());
  if (n % 2 == 1) return *upper;
  const double lower = *std::max_element(values.begin(), upper);
  return lower + (*upper - lower) / 2.0;
}

OverheadModel fit_line(std::span<const std::pair<double, double>> points) {
  if (points.size() < 2) {
    throw Error(ErrorCode::kInsufficientData, "a line fit needs at least two points");
  }
  // Centered sums keep the slope accurate when x spans several decades.
  long double mean_x = 0, mean_y = 0;
  for (const auto& [x, y] : points) {
    mean_x += x;
    mean_y += y;
  }
  mean_x /= static_cast<long double>(points.size());
  mean_y /= static_cast<long double>(points.size());

  long double sxx = 0, sxy = 0;
  for (const auto& [x, y] : points) {
    const long double dx = x - mean_x;
    sxx += dx * dx;
    sxy += dx * (y - mean_y);
  }
  if (sxx == 0) throw Error(ErrorCode::kInsufficientData, "a line fit needs two distinct x values");
  const long double slope = sxy / sxx;
  return {static_cast<double>(mean_y - slope * mean_x), static_cast<double>(slope)};
}

OverheadModel fit_overhead(std::span<const BenchmarkSample> samples,
                           std::string_view instrumenter, std::string_view case_label) {
  std::map<std::uint64_t, std::vector<double>> by_n;
  for (const auto& s : samples) {
    if (s.instrumenter == instrumenter && s.case_label == case_label) {
      by_n[s.iterations].push_back(s.runtime_s);
    }
  }
  if (by_n.size() < 2) {
    throw Error(ErrorCode::kInsufficientData,
                fmt::format("group {},{} has {} distinct iteration count(s); need at least 2",
                            instrumenter, case_label, by_n.size()));
  }
  std::vector<std::pair<double, double>> points;
  points.reserve(by_n.size());
  for (auto& [n, runtimes] : by_n) {
    points.emplace_back(static_cast<double>(n), median(std::move(runtimes)));
  }
  return fit_line(points);
}

std::int64_t to_picoseconds(double seconds) {
  return static_cast<std::int64_t>(std::llround(seconds * 1e12));
}

OverheadDelta compare_overheads(const OverheadModel& a, const OverheadModel& b) {
  return {to_picoseconds(a.alpha_s) - to_picoseconds(b.alpha_s),
          to_picoseconds(a.beta_s) - to_picoseconds(b.beta_s)};
}

namespace {

std::string format_micros(double us, bool sign) {
  const bool coarse = std::fabs(us) >= 0.995;
  if (sign) return coarse ? fmt::format("{:+.1f} us", us) : fmt::format("{:+.2f} us", us);
  return coarse ? fmt::format("{:.1f} us", us) : fmt::format("{:.2f} us", us);
}

}  // namespace

std::string format_model(const OverheadModel& model) {
  return fmt::format("{:.2f} s & {}", model.alpha_s, format_micros(model.beta_s * 1e6, false));
}

std::string format_delta(const OverheadDelta& delta) {
  return fmt::format("{:+.2f} s & {}", static_cast<double>(delta.alpha_ps) * 1e-12,
                     format_micros(static_cast<double>(delta.beta_ps) * 1e-6, true));
}

}  // namespace tracelet::analysis
