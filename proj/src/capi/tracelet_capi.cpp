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

#include "tracelet/tracelet.h"

#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <limits>
#include <memory>
#include <new>
#include <string>
#include <vector>

#include "tracelet/analysis/dump.hpp"
#include "tracelet/analysis/overhead.hpp"
#include "tracelet/analysis/report.hpp"
#include "tracelet/analysis/samples.hpp"
#include "tracelet/common/error.hpp"
#include "tracelet/core/runtime.hpp"
#include "tracelet/profile/call_tree.hpp"
#include "tracelet/trace/archive.hpp"

struct tl_samples {
  std::vector<tracelet::analysis::BenchmarkSample> samples;
  std::vector<tracelet::analysis::SampleGroup> groups;
};

namespace {

using tracelet::Error;
using tracelet::ErrorCode;

thread_local std::string t_last_error;

int32_t fail(ErrorCode code, const char* message) {
  t_last_error = message;
  return static_cast<int32_t>(code);
}

// Runs body and maps exceptions onto error codes; nothing escapes into C.
template <class Body>
int32_t guarded(Body&& body) noexcept {
  try {
    body();
    return TL_OK;
  } catch (const Error& e) {
    return fail(e.code(), e.what());
  } catch (const std::bad_alloc&) {
    return fail(ErrorCode::kInternal, "out of memory");
  } catch (const std::filesystem::filesystem_error& e) {
    return fail(ErrorCode::kIo, e.what());
  } catch (const std::exception& e) {
    return fail(ErrorCode::kInternal, e.what());
  } catch (...) {
    return fail(ErrorCode::kInternal, "unknown exception");
  }
}

template <class Body>
int64_t guarded_id(Body&& body) noexcept {
  int64_t id = 0;
  const int32_t rc = guarded([&] { id = body(); });
  return rc == TL_OK ? id : -static_cast<int64_t>(rc);
}

void require(bool condition, const char* message) {
  if (!condition) throw Error(ErrorCode::kInvalidArgument, message);
}

tracelet::LocationId location_id(int64_t value) {
  if (value < 0 || value > std::numeric_limits<uint32_t>::max()) {
    throw Error(ErrorCode::kUnknownLocation, "unknown location " + std::to_string(value));
  }
  return tracelet::LocationId{static_cast<uint32_t>(value)};
}

tracelet::RegionId region_id(int64_t value) {
  if (value < 0 || value > std::numeric_limits<uint32_t>::max()) {
    throw Error(ErrorCode::kUnknownRegion, "unknown region " + std::to_string(value));
  }
  return tracelet::RegionId{static_cast<uint32_t>(value)};
}

char* copy_out(const std::string& text) {
  auto* out = static_cast<char*>(std::malloc(text.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, text.c_str(), text.size() + 1);
  return out;
}

const char* or_empty(const char* s) { return s != nullptr ? s : ""; }

tracelet::analysis::OverheadModel to_model(const tl_overhead_model& m) {
  return {m.alpha_s, m.beta_s};
}

}  // namespace

extern "C" {

int32_t tl_init(const char* config_json) {
  return guarded([&] {
    tracelet::core::runtime::init(tracelet::core::config_from_json(or_empty(config_json)));
  });
}

int64_t tl_region(const char* name, const char* group, const char* file, int64_t line,
                  int32_t kind) {
  return guarded_id([&]() -> int64_t {
    auto& m = tracelet::core::runtime::active();
    require(name != nullptr, "region name must not be NULL");
    require(line >= 0, "line must be non-negative");
    require(kind == TL_REGION_INTERPRETED || kind == TL_REGION_NATIVE, "unknown region kind");
    return m
        .register_region(name, or_empty(group), or_empty(file), static_cast<uint64_t>(line),
                         static_cast<tracelet::RegionKind>(kind))
        .value;
  });
}

int64_t tl_location(const char* label) {
  return guarded_id([&]() -> int64_t {
    return tracelet::core::runtime::active().acquire_location(or_empty(label)).value;
  });
}

int32_t tl_enter(int64_t location, int64_t region) {
  return guarded([&] {
    tracelet::core::runtime::active().enter(location_id(location), region_id(region));
  });
}

int32_t tl_exit(int64_t location, int64_t region) {
  return guarded([&] {
    tracelet::core::runtime::active().exit(location_id(location), region_id(region));
  });
}

int64_t tl_now(void) {
  return guarded_id([]() -> int64_t {
    return static_cast<int64_t>(tracelet::core::runtime::active().now().ns);
  });
}

int32_t tl_finalize(void) { return tl_finalize_ex(nullptr); }

int32_t tl_finalize_ex(tl_summary* summary) {
  return guarded([&] {
    const auto s = tracelet::core::runtime::finalize();
    if (summary != nullptr) {
      *summary = tl_summary{s.regions, s.locations, s.events, s.dropped_exits,
                            s.closed_at_finalize};
    }
  });
}

int32_t tl_is_active(void) { return tracelet::core::runtime::active_or_null() != nullptr; }

const char* tl_last_error(void) { return t_last_error.c_str(); }

const char* tl_error_name(int32_t code) {
  if (code < 0 || code > TL_E_INTERNAL) return "Unknown";
  return tracelet::error_name(static_cast<ErrorCode>(code));
}

void tl_string_free(char* text) { std::free(text); }

int32_t tl_dump_trace(const char* archive_dir, char** out_text) {
  return guarded([&] {
    require(archive_dir != nullptr && out_text != nullptr, "NULL argument");
    *out_text = copy_out(tracelet::analysis::dump_trace(tracelet::trace::read_archive(archive_dir)));
  });
}

int32_t tl_report_profile(const char* profile_path, int32_t sort_key, int32_t as_json,
                          char** out_text) {
  return guarded([&] {
    require(profile_path != nullptr && out_text != nullptr, "NULL argument");
    require(sort_key >= TL_SORT_INCLUSIVE && sort_key <= TL_SORT_VISITS, "unknown sort key");
    const std::filesystem::path path(profile_path);
    const auto profile = tracelet::profile::read_profile(path);

    std::vector<tracelet::RegionDescriptor> regions;
    const auto dir = path.has_parent_path() ? path.parent_path() : std::filesystem::path(".");
    if (std::filesystem::exists(dir / tracelet::trace::kDefinitionsFile)) {
      regions = tracelet::trace::read_definitions(dir).regions;
    }
    auto rows = tracelet::analysis::flatten_profile(profile.children, regions);
    tracelet::analysis::sort_rows(rows, static_cast<tracelet::analysis::SortKey>(sort_key));
    *out_text = copy_out(as_json != 0 ? tracelet::analysis::render_json(rows)
                                      : tracelet::analysis::render_table(rows));
  });
}

int32_t tl_samples_load(const char* csv_path, tl_samples** out) {
  return guarded([&] {
    require(csv_path != nullptr && out != nullptr, "NULL argument");
    auto handle = std::make_unique<tl_samples>();
    handle->samples = tracelet::analysis::load_samples_csv(csv_path);
    handle->groups = tracelet::analysis::distinct_groups(handle->samples);
    *out = handle.release();
  });
}

void tl_samples_free(tl_samples* samples) { delete samples; }

size_t tl_samples_size(const tl_samples* samples) {
  return samples != nullptr ? samples->samples.size() : 0;
}

size_t tl_samples_group_count(const tl_samples* samples) {
  return samples != nullptr ? samples->groups.size() : 0;
}

int32_t tl_samples_group(const tl_samples* samples, size_t index, const char** instrumenter,
                         const char** case_label) {
  return guarded([&] {
    require(samples != nullptr && instrumenter != nullptr && case_label != nullptr,
            "NULL argument");
    require(index < samples->groups.size(), "group index out of range");
    *instrumenter = samples->groups[index].instrumenter.c_str();
    *case_label = samples->groups[index].case_label.c_str();
  });
}

int32_t tl_fit_overhead(const tl_samples* samples, const char* instrumenter,
                        const char* case_label, tl_overhead_model* out) {
  return guarded([&] {
    require(samples != nullptr && instrumenter != nullptr && case_label != nullptr &&
                out != nullptr,
            "NULL argument");
    const auto m = tracelet::analysis::fit_overhead(samples->samples, instrumenter, case_label);
    *out = tl_overhead_model{m.alpha_s, m.beta_s};
  });
}

int32_t tl_compare_overheads(const tl_overhead_model* a, const tl_overhead_model* b,
                             tl_overhead_delta* out) {
  return guarded([&] {
    require(a != nullptr && b != nullptr && out != nullptr, "NULL argument");
    const auto d = tracelet::analysis::compare_overheads(to_model(*a), to_model(*b));
    *out = tl_overhead_delta{d.alpha_ps, d.beta_ps};
  });
}

int32_t tl_format_model(const tl_overhead_model* model, char** out_text) {
  return guarded([&] {
    require(model != nullptr && out_text != nullptr, "NULL argument");
    *out_text = copy_out(tracelet::analysis::format_model(to_model(*model)));
  });
}

int32_t tl_format_delta(const tl_overhead_delta* delta, char** out_text) {
  return guarded([&] {
    require(delta != nullptr && out_text != nullptr, "NULL argument");
    *out_text =
        copy_out(tracelet::analysis::format_delta({delta->alpha_ps, delta->beta_ps}));
  });
}

}  // extern "C"
