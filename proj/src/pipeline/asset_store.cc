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

#include "propforge/pipeline/asset_store.h"

#include <cctype>

#include "propforge/common/error.h"
#include "propforge/common/file_util.h"

namespace propforge {
namespace {

bool IsHex64(std::string_view s) {
  if (s.size() != 64) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c)) && (c < 'a' || c > 'f')) return false;
  }
  return true;
}

std::string Trim(std::string s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  return s;
}

}  // namespace

bool IsValidAssetRef(std::string_view ref) {
  const std::size_t dot = ref.find('.');
  if (dot == std::string_view::npos || !IsHex64(ref.substr(0, dot))) return false;
  const std::string_view ext = ref.substr(dot + 1);
  if (ext.empty()) return false;
  for (char c : ext) {
    if (!std::isalnum(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

AssetStore::AssetStore(std::filesystem::path root) : root_(std::move(root)) {
  std::error_code ec;
  std::filesystem::create_directories(root_ / "assets", ec);
  std::filesystem::create_directories(root_ / "cache", ec);
  if (ec) Throw(ErrorCode::kStoreError, "cannot create asset store at " + root_.string());
}

std::string AssetStore::Put(std::span<const std::uint8_t> data, std::string_view ext) {
  const std::string ref = Sha256Hex(data) + "." + std::string(ext);
  if (!IsValidAssetRef(ref)) Throw(ErrorCode::kInvalidArgument, "bad asset extension");
  if (!Contains(ref)) WriteFileAtomic(PathOf(ref), data);
  return ref;
}

Bytes AssetStore::Get(const std::string& ref) const {
  Bytes data = ReadFileBytes(PathOf(ref));
  if (Sha256Hex(data) != ref.substr(0, 64)) {
    Throw(ErrorCode::kStoreError, "asset " + ref + " does not match its content hash");
  }
  return data;
}

bool AssetStore::Contains(const std::string& ref) const {
  return std::filesystem::exists(PathOf(ref));
}

std::filesystem::path AssetStore::PathOf(const std::string& ref) const {
  if (!IsValidAssetRef(ref)) Throw(ErrorCode::kStoreError, "malformed asset reference '" + ref + "'");
  return root_ / "assets" / ref;
}

std::optional<std::string> AssetStore::LookupStage(const std::string& key) const {
  if (!IsHex64(key)) Throw(ErrorCode::kInvalidArgument, "stage cache keys are sha256 digests");
  const std::filesystem::path path = root_ / "cache" / key;
  if (!std::filesystem::exists(path)) return std::nullopt;
  const std::string ref = Trim(ReadFileText(path));
  // A dangling entry (asset deleted) is treated as a miss.
  if (!IsValidAssetRef(ref) || !Contains(ref)) return std::nullopt;
  return ref;
}

void AssetStore::RecordStage(const std::string& key, const std::string& ref) {
  if (!IsHex64(key)) Throw(ErrorCode::kInvalidArgument, "stage cache keys are sha256 digests");
  WriteFileAtomic(root_ / "cache" / key, ref + "\n");
}

}  // namespace propforge
