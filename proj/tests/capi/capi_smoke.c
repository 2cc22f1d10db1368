/* Copyright 2026 The Tracelet Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* Checks that the public header compiles as C and that the call sequence of
 * a small script (module body -> foo -> baz -> print builtin) works. */

#include <stdio.h>

#include "tracelet/tracelet.h"

int main(int argc, char** argv) {
  char config[1024];
  tl_summary summary;
  int64_t loc, regions[4];
  int i;

  if (argc < 2) {
    fprintf(stderr, "usage: %s <outdir>\n", argv[0]);
    return 2;
  }
  snprintf(config, sizeof config,
           "{\"substrates\":[\"trace\",\"profile\"],\"output_dir\":\"%s\","
           "\"instrumenter\":\"c-smoke\"}",
           argv[1]);
  if (tl_init(config) != TL_OK) {
    fprintf(stderr, "init: %s\n", tl_last_error());
    return 1;
  }
  regions[0] = tl_region("<module>", "__main__", "run.py", 1, TL_REGION_INTERPRETED);
  regions[1] = tl_region("foo", "__main__", "run.py", 3, TL_REGION_INTERPRETED);
  regions[2] = tl_region("baz", "__main__", "run.py", 1, TL_REGION_INTERPRETED);
  regions[3] = tl_region("print", "builtins", "", 0, TL_REGION_NATIVE);
  loc = tl_location("MainThread");
  for (i = 0; i < 4; ++i) {
    if (tl_enter(loc, regions[i]) != TL_OK) return 1;
  }
  for (i = 3; i >= 0; --i) {
    if (tl_exit(loc, regions[i]) != TL_OK) return 1;
  }
  if (tl_finalize_ex(&summary) != TL_OK) return 1;
  if (summary.regions != 4 || summary.events != 8) {
    fprintf(stderr, "unexpected summary: %llu regions, %llu events\n",
            (unsigned long long)summary.regions, (unsigned long long)summary.events);
    return 1;
  }
  return 0;
}
