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

#ifndef PROPFORGE_PIPELINE_MOCK_BACKEND_H_
#define PROPFORGE_PIPELINE_MOCK_BACKEND_H_

#include <array>
#include <cstdint>
#include <string>

#include "propforge/common/hash.h"
#include "propforge/common/png.h"
#include "propforge/pipeline/backend.h"
#include "propforge/prompt/prompt.h"
#include "propforge/render/depth_render.h"

namespace propforge {

// Offline stand-in for the generative services.
//   text-to-image: RGB image whose red channel is the depth byte and whose
//     green/blue channels carry a color hashed from (prompt, seed);
//     background stays black.
//   background removal: alpha = 255 where any color channel is nonzero.
//   image-to-mesh: the red channel of the foreground extruded as a
//     heightfield, colored by the green/blue channels.
namespace mock {

// Foreground color for a prompt; every component is in [64, 255].
std::array<std::uint8_t, 3> PromptColor(const std::string& prompt, std::uint64_t seed);

Bytes TextToImage(const std::string& prompt, const Bytes& depth_png, std::uint64_t seed);
Bytes RemoveBackground(const Bytes& image_png);
// Foreground from depth > 0 rather than from color; used by the builtin
// removal stage. Falls back to RemoveBackground without a depth map.
Bytes RemoveBackgroundWithDepth(const Bytes& image_png, const Bytes& depth_png);
TriangleMesh ReconstructHeightfield(const Image8& image, const MockOptions& options);
Bytes ImageToMesh(const Bytes& image_png, const MockOptions& options);

}  // namespace mock

class MockBackend : public Backend {
 public:
  explicit MockBackend(MockOptions options = {}) : options_(options) {}

  std::string StageBackendId(Stage stage) const override;
  Bytes TextToImage(const std::string& prompt, const Bytes& depth_png,
                    std::uint64_t seed) override;
  Bytes RemoveBackground(const Bytes& image_png, const Bytes& depth_png) override;
  Bytes ImageToMesh(const Bytes& image_png) override;

 private:
  MockOptions options_;
};

// The three mock stages composed: what the pipeline produces for a depth
// map, prompt and seed before anchoring. EmptyForeground for an
// all-background depth image.
TriangleMesh MockGenerateMesh(const DepthImage& depth, const PromptSpec& prompt,
                              std::uint64_t seed, const MockOptions& options = {});

}  // namespace propforge

#endif  // PROPFORGE_PIPELINE_MOCK_BACKEND_H_
