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

#include "tracelet/common/error.hpp"

namespace tracelet {

const char* error_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kOk: return "Ok";
    case ErrorCode::kAlreadyInitialized: return "AlreadyInitialized";
    case ErrorCode::kNotInitialized: return "NotInitialized";
    case ErrorCode::kOutputDirUnwritable: return "OutputDirUnwritable";
    case ErrorCode::kUnknownRegion: return "UnknownRegion";
    case ErrorCode::kUnknownLocation: return "UnknownLocation";
    case ErrorCode::kIo: return "IoError";
    case ErrorCode::kParse: return "ParseError";
    case ErrorCode::kInsufficientData: return "InsufficientData";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kInternal: return "InternalError";
  }
  return "Unknown";
}

}  // namespace tracelet
