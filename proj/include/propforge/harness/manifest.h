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

#ifndef PROPFORGE_HARNESS_MANIFEST_H_
#define PROPFORGE_HARNESS_MANIFEST_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "propforge/pipeline/backend.h"
#include "propforge/registration/registration.h"
#include "propforge/render/depth_render.h"

namespace propforge {

struct StudyObject {
  std::string id;
  std::filesystem::path mesh;
};

struct StudyManifest {
  // Objects come from `objects` when listed, otherwise from every mesh in
  // dataset_dir.
  std::filesystem::path dataset_dir;
  std::vector<StudyObject> objects;
  std::filesystem::path prompts;
  BackendConfig backend;
  std::uint64_t seed = 0;
  std::size_t samples_per_mesh = 10000;
  IcpParams icp;
  CameraPose camera = StandardViewpoint();
  int render_width = kDefaultDepthResolution;
  int render_height = kDefaultDepthResolution;
  RenderOptions render;
  // Parallel pairs; 0 means one per hardware thread.
  int threads = 0;

  // ManifestError when a referenced path is missing or ids repeat.
  void Validate() const;
};

// TOML. Relative paths resolve against `base_dir`. Unknown keys are errors
// so typos do not silently fall back to defaults.
StudyManifest ParseStudyManifest(std::string_view toml, const std::filesystem::path& base_dir);
StudyManifest LoadStudyManifest(const std::filesystem::path& path);

}  // namespace propforge

#endif  // PROPFORGE_HARNESS_MANIFEST_H_
