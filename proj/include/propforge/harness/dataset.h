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

#ifndef PROPFORGE_HARNESS_DATASET_H_
#define PROPFORGE_HARNESS_DATASET_H_

#include <filesystem>
#include <string>
#include <vector>

#include "propforge/mesh/mesh.h"

namespace propforge {

struct DatasetEntry {
  std::string id;  // file stem
  std::filesystem::path path;
  TriangleMesh mesh;
};

struct SkippedFile {
  std::filesystem::path path;
  std::string reason;
};

struct DatasetIngest {
  std::vector<DatasetEntry> entries;  // sorted by id
  std::vector<SkippedFile> skipped;
  std::vector<std::string> warnings;
};

// Loads every .obj and .glb file directly inside `dir`. Files that fail to
// load are reported in `skipped`; other extensions are ignored. When two
// files share a stem the first in name order wins. StoreError when `dir`
// is not a readable directory.
DatasetIngest IngestDataset(const std::filesystem::path& dir);

}  // namespace propforge

#endif  // PROPFORGE_HARNESS_DATASET_H_
