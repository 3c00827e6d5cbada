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

#ifndef PROPFORGE_COMMON_FILE_UTIL_H_
#define PROPFORGE_COMMON_FILE_UTIL_H_

#include <filesystem>
#include <span>
#include <string>
#include <string_view>

#include "propforge/common/hash.h"

namespace propforge {

// Throws Error(kStoreError) when the file cannot be read.
Bytes ReadFileBytes(const std::filesystem::path& path);
std::string ReadFileText(const std::filesystem::path& path);

// Writes to a sibling temporary file and renames it into place, so readers
// never observe a partial file. Creates parent directories.
void WriteFileAtomic(const std::filesystem::path& path,
                     std::span<const std::uint8_t> data);
void WriteFileAtomic(const std::filesystem::path& path, std::string_view text);

}  // namespace propforge

#endif  // PROPFORGE_COMMON_FILE_UTIL_H_
