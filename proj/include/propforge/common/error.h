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

#ifndef PROPFORGE_COMMON_ERROR_H_
#define PROPFORGE_COMMON_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace propforge {

// Every failure raised by the library carries one of these codes so callers
// can branch on the kind without parsing messages.
enum class ErrorCode {
  kInvalidArgument,
  kParseError,
  kEmptyMesh,
  kIndexOutOfRange,
  kZeroAreaMesh,
  kZeroExtent,
  kDegenerateConfiguration,
  kDegenerateCamera,
  kEmptySlot,
  kInvalidTemplate,
  kCountMismatch,
  kStoreError,
  kTransportError,
  kBackendRejection,
  kInvalidArtifact,
  kEmptyForeground,
  kInvalidState,
  kDegenerateMarginals,
  kEmptyGroup,
  kAllZeroDifferences,
  kManifestError,
};

std::string_view ErrorCodeName(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void Throw(ErrorCode code, const std::string& message);

}  // namespace propforge

#endif  // PROPFORGE_COMMON_ERROR_H_
