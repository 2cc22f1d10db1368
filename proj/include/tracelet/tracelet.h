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

#ifndef TRACELET_TRACELET_H
#define TRACELET_TRACELET_H

/*
 * Flat C interface of the tracelet measurement core and analysis helpers.
 *
 * Measurement functions operate on one process-wide measurement. Functions
 * returning int32_t return TL_OK (0) on success and one of the TL_E_* codes
 * otherwise. Functions returning int64_t ids return the id (>= 0) on success
 * and the negated error code on failure. All strings are UTF-8 and
 * NUL-terminated. After a failure, tl_last_error() holds a message for the
 * calling thread.
 */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(TRACELET_BUILDING_LIBRARY)
#    define TRACELET_API __declspec(dllexport)
#  else
#    define TRACELET_API __declspec(dllimport)
#  endif
#else
#  define TRACELET_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

enum tl_error_code {
  TL_OK = 0,
  TL_E_ALREADY_INITIALIZED = 1,
  TL_E_NOT_INITIALIZED = 2,
  TL_E_OUTPUT_DIR_UNWRITABLE = 3,
  TL_E_UNKNOWN_REGION = 4,
  TL_E_UNKNOWN_LOCATION = 5,
  TL_E_IO = 6,
  TL_E_PARSE = 7,
  TL_E_INSUFFICIENT_DATA = 8,
  TL_E_INVALID_ARGUMENT = 9,
  TL_E_INTERNAL = 10
};

enum tl_region_kind {
  TL_REGION_INTERPRETED = 0,
  TL_REGION_NATIVE = 1
};

enum tl_sort_key {
  TL_SORT_INCLUSIVE = 0,
  TL_SORT_EXCLUSIVE = 1,
  TL_SORT_VISITS = 2
};

typedef struct tl_summary {
  uint64_t regions;
  uint64_t locations;
  uint64_t events;
  uint64_t dropped_exits;
  uint64_t closed_at_finalize;
} tl_summary;

/* ---- measurement ------------------------------------------------------- */

/*
 * config_json may be NULL or a JSON object with any of the keys
 *   "substrates": ["trace", "profile"] | ["none"]
 *   "output_dir": "path"
 *   "instrumenter": "label"
 *   "buffer_capacity": 4096
 * Missing keys fall back to TRACELET_SUBSTRATES, TRACELET_OUT and
 * TRACELET_BUFCAP, then to built-in defaults.
 */
TRACELET_API int32_t tl_init(const char* config_json);

TRACELET_API int64_t tl_region(const char* name, const char* group, const char* file,
                               int64_t line, int32_t kind);

/* Returns the calling thread's location, creating it on first use. */
TRACELET_API int64_t tl_location(const char* label);

TRACELET_API int32_t tl_enter(int64_t location, int64_t region);
TRACELET_API int32_t tl_exit(int64_t location, int64_t region);

/* Nanoseconds since tl_init, or the negated error code. */
TRACELET_API int64_t tl_now(void);

TRACELET_API int32_t tl_finalize(void);
/* Like tl_finalize; fills *summary when it is not NULL. */
TRACELET_API int32_t tl_finalize_ex(tl_summary* summary);

TRACELET_API int32_t tl_is_active(void);

/* ---- diagnostics -------------------------------------------------------- */

TRACELET_API const char* tl_last_error(void);
TRACELET_API const char* tl_error_name(int32_t code);

/* Frees strings returned through char** out-parameters below. */
TRACELET_API void tl_string_free(char* text);

/* ---- analysis ----------------------------------------------------------- */

/* Chronological per-location listing of a trace directory. */
TRACELET_API int32_t tl_dump_trace(const char* archive_dir, char** out_text);

/*
 * Flat call-path table of a profile.json, sorted descending by sort_key.
 * Region names come from definitions.json next to the profile when present.
 * as_json != 0 renders the rows as a JSON array instead of a text table.
 */
TRACELET_API int32_t tl_report_profile(const char* profile_path, int32_t sort_key,
                                       int32_t as_json, char** out_text);

typedef struct tl_samples tl_samples;

TRACELET_API int32_t tl_samples_load(const char* csv_path, tl_samples** out);
TRACELET_API void tl_samples_free(tl_samples* samples);
TRACELET_API size_t tl_samples_size(const tl_samples* samples);
/* Number of distinct (instrumenter, case) groups, in first-appearance order. */
TRACELET_API size_t tl_samples_group_count(const tl_samples* samples);
/* Pointers stay valid until tl_samples_free. */
TRACELET_API int32_t tl_samples_group(const tl_samples* samples, size_t index,
                                      const char** instrumenter, const char** case_label);

typedef struct tl_overhead_model {
  double alpha_s;
  double beta_s;
} tl_overhead_model;

/* Exact differences a - b, in integer picoseconds. */
typedef struct tl_overhead_delta {
  int64_t alpha_ps;
  int64_t beta_ps;
} tl_overhead_delta;

TRACELET_API int32_t tl_fit_overhead(const tl_samples* samples, const char* instrumenter,
                                     const char* case_label, tl_overhead_model* out);
TRACELET_API int32_t tl_compare_overheads(const tl_overhead_model* a,
                                          const tl_overhead_model* b,
                                          tl_overhead_delta* out);
/* "<alpha> s & <beta> us", the layout of a median-overhead table row. */
TRACELET_API int32_t tl_format_model(const tl_overhead_model* model, char** out_text);
TRACELET_API int32_t tl_format_delta(const tl_overhead_delta* delta, char** out_text);

#ifdef __cplusplus
}  // extern "C"
#endif

#endif  // TRACELET_TRACELET_H
