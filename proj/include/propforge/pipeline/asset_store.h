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

#ifndef PROPFORGE_PIPELINE_ASSET_STORE_H_
#define PROPFORGE_PIPELINE_ASSET_STORE_H_

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "propforge/common/hash.h"

namespace propforge {

// Content-addressed blobs under <root>/assets/<sha256>.<ext>, plus a stage
// cache under <root>/cache/<key> whose entries name an asset.
// Writes are atomic renames of identical content, so concurrent writers are
// harmless.
class AssetStore {
 public:
  explicit AssetStore(std::filesystem::path root);

  // Returns the reference "<sha256>.<ext>".
  std::string Put(std::span<const std::uint8_t> data, std::string_view ext);
  // StoreError for a missing or corrupted asset.
  Bytes Get(const std::string& ref) const;
  bool Contains(const std::string& ref) const;
  std::filesystem::path PathOf(const std::string& ref) const;

  std::optional<std::string> LookupStage(const std::string& key) const;
  void RecordStage(const std::string& key, const std::string& ref);

  const std::filesystem::path& root() const { return root_; }

 private:
  std::filesystem::path root_;
};

// Checks "<64 hex>.<ext>" so a reference cannot escape the store directory.
bool IsValidAssetRef(std::string_view ref);

}  // namespace propforge

#endif  // PROPFORGE_PIPELINE_ASSET_STORE_H_
