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

#include "tracelet/analysis/samples.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>

#include "tracelet/common/error.hpp"

namespace tracelet::analysis {

namespace {

[[noreturn]] void csv_error(std::string_view source, std::size_t line, const std::string& what) {
  throw Error(ErrorCode::kParse,
              std::string(source) + ":" + std::to_string(line) + ": " + what);
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  while (true) {
    const auto comma = line.find(',');
    out.push_back(line.substr(0, comma));
    if (comma == std::string_view::npos) break;
    line.remove_prefix(comma + 1);
  }
  return out;
}

bool parse_double(std::string_view text, double& out) {
  // std::from_chars for double is missing from older standard libraries.
  std::string owned(text);
  char* end = nullptr;
  out = std::strtod(owned.c_str(), &end);
  return !owned.empty() && end == owned.c_str() + owned.size() && std::isfinite(out);
}

// Accepts integers and integral scientific notation such as 1e6.
bool parse_count(std::string_view text, std::uint64_t& out) {
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  if (ec == std::errc{} && ptr == text.data() + text.size()) return true;
  double value = 0.0;
  if (!parse_double(text, value) || value < 0.0 || value != std::floor(value) ||
      value > static_cast<double>(std::numeric_limits<std::uint64_t>::max())) {
    return false;
  }
  out = static_cast<std::uint64_t>(value);
  return true;
}

}  // namespace

std::vector<BenchmarkSample> parse_samples_csv(std::istream& in, std::string_view source_name) {
  std::vector<BenchmarkSample> samples;
  std::string line;
  std::size_t line_no = 0;
  bool saw_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (!saw_header) {
      if (line != kSamplesHeader) {
        csv_error(source_name, line_no, "expected header '" + std::string(kSamplesHeader) + "'");
      }
      saw_header = true;
      continue;
    }

    const auto fields = split(line);
    if (fields.size() != 5) {
      csv_error(source_name, line_no,
                "expected 5 fields, found " + std::to_string(fields.size()));
    }
    BenchmarkSample s;
    s.instrumenter = std::string(fields[0]);
    s.case_label = std::string(fields[1]);
    if (s.instrumenter.empty() || s.case_label.empty()) {
      csv_error(source_name, line_no, "instrumenter and case must not be empty");
    }
    if (!parse_count(fields[2], s.iterations) || s.iterations == 0) {
      csv_error(source_name, line_no, "iterations must be a positive integer");
    }
    std::uint64_t rep = 0;
    if (!parse_count(fields[3], rep) || rep > std::numeric_limits<std::uint32_t>::max()) {
      csv_error(source_name, line_no, "repetition must be a non-negative integer");
    }
    s.repetition = static_cast<std::uint32_t>(rep);
    if (!parse_double(fields[4], s.runtime_s) || s.runtime_s <= 0.0) {
      csv_error(source_name, line_no, "runtime_s must be a positive number");
    }
    samples.push_back(std::move(s));
  }
  if (!saw_header) csv_error(source_name, 1, "missing header");
  return samples;
}

std::vector<BenchmarkSample> load_samples_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  return parse_samples_csv(in, path.filename().string());
}

void write_samples_csv(std::ostream& out, std::span<const BenchmarkSample> samples) {
  out << kSamplesHeader << '\n';
  const auto old_precision = out.precision(std::numeric_limits<double>::max_digits10);
  for (const auto& s : samples) {
    out << s.instrumenter << ',' << s.case_label << ',' << s.iterations << ','
        << s.repetition << ',' << s.runtime_s << '\n';
  }
  out.precision(old_precision);
}

std::vector<SampleGroup> distinct_groups(std::span<const BenchmarkSample> samples) {
  std::vector<SampleGroup> groups;
  for (const auto& s : samples) {
    SampleGroup g{s.instrumenter, s.case_label};
    if (std::find(groups.begin(), groups.end(), g) == groups.end()) groups.push_back(std::move(g));
  }
  return groups;
}

}  // namespace tracelet::analysis
