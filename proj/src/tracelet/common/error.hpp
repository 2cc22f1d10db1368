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
#include <stdexcept>
#include <string>

namespace tracelet {

// Values match the tl_error_code enum of the C interface.
enum class ErrorCode : std::int32_t {
  kOk = 0,
  kAlreadyInitialized = 1,
  kNotInitialized = 2,
  kOutputDirUnwritable = 3,
  kUnknownRegion = 4,
  kUnknownLocation = 5,
  kIo = 6,
  kParse = 7,
  kInsufficientData = 8,
  kInvalidArgument = 9,
  kInternal = 10,
};

const char* error_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace tracelet
