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

#include "propforge/harness/dataset.h"

#include <algorithm>
#include <set>

#include "propforge/common/error.h"
#include "propforge/mesh/mesh_io.h"

namespace propforge {

DatasetIngest IngestDataset(const std::filesystem::path& dir) {
  std::error_code ec;
  if (!std::filesystem::is_directory(dir, ec)) {
    Throw(ErrorCode::kStoreError, "dataset directory not found: " + dir.string());
  }
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir, ec)) {
    if (!entry.is_regular_file()) continue;
    std::string ext = entry.path().extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
    if (ext == ".obj" || ext == ".glb") files.push_back(entry.path());
  }
  if (ec) Throw(ErrorCode::kStoreError, "cannot list " + dir.string());
  std::sort(files.begin(), files.end());

  DatasetIngest out;
  std::set<std::string> ids;
  for (const auto& path : files) {
    const std::string id = path.stem().string();
    if (ids.count(id)) {
      out.skipped.push_back({path, "duplicate object id '" + id + "'"});
      continue;
    }
    try {
      out.entries.push_back({id, path, LoadMesh(path)});
      ids.insert(id);
    } catch (const Error& e) {
      out.skipped.push_back({path, e.what()});
    }
  }
  if (out.entries.empty()) out.warnings.push_back("no loadable meshes in " + dir.string());
  return out;
}

}  // namespace propforge
