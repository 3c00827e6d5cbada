// Copyright 2026 The Propforge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "propforge/common/error.h"

namespace propforge {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kEmptyMesh: return "EmptyMesh";
    case ErrorCode::kIndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::kZeroAreaMesh: return "ZeroAreaMesh";
    case ErrorCode::kZeroExtent: return "ZeroExtent";
    case ErrorCode::kDegenerateConfiguration: return "DegenerateConfiguration";
    case ErrorCode::kDegenerateCamera: return "DegenerateCamera";
    case ErrorCode::kEmptySlot: return "EmptySlot";
    case ErrorCode::kInvalidTemplate: return "InvalidTemplate";
    case ErrorCode::kCountMismatch: return "CountMismatch";
    case ErrorCode::kStoreError: return "StoreError";
    case ErrorCode::kTransportError: return "TransportError";
    case ErrorCode::kBackendRejection: return "BackendRejection";
    case ErrorCode::kInvalidArtifact: return "InvalidArtifact";
    case ErrorCode::kEmptyForeground: return "EmptyForeground";
    case ErrorCode::kInvalidState: return "InvalidState";
    case ErrorCode::kDegenerateMarginals: return "DegenerateMarginals";
    case ErrorCode::kEmptyGroup: return "EmptyGroup";
    case ErrorCode::kAllZeroDifferences: return "AllZeroDifferences";
    case ErrorCode::kManifestError: return "ManifestError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message),
      code_(code) {}

void Throw(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace propforge
