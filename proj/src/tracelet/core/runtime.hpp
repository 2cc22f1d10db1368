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

#include "tracelet/core/config.hpp"
#include "tracelet/core/measurement.hpp"

// The single process-wide measurement behind the C interface. init() and
// finalize() must not race each other or event calls.
namespace tracelet::core::runtime {

// Throws Error(kAlreadyInitialized) while a measurement is active.
void init(MeasurementConfig config);

// Throws Error(kNotInitialized) when no measurement is active.
Measurement& active();
Measurement* active_or_null() noexcept;

// Finalizes and tears down the active measurement.
Summary finalize();

}  // namespace tracelet::core::runtime
