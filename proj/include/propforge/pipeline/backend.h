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

#ifndef PROPFORGE_PIPELINE_BACKEND_H_
#define PROPFORGE_PIPELINE_BACKEND_H_

#include <cstdint>
#include <memory>
#include <string>

#include "propforge/common/hash.h"
#include "propforge/pipeline/anchor.h"
#include "propforge/pipeline/job.h"

namespace propforge {

// The three remote stages. Implementations throw Error with
// kTransportError (retried), kBackendRejection or kInvalidArtifact.
class Backend {
 public:
  virtual ~Backend() = default;

  // Identifies the service behind a stage; part of every cache key.
  virtual std::string StageBackendId(Stage stage) const = 0;

  // Depth-conditioned text-to-image: returns an RGB(A) PNG.
  virtual Bytes TextToImage(const std::string& prompt, const Bytes& depth_png,
                            std::uint64_t seed) = 0;
  // Returns a PNG with an alpha channel. depth_png may be empty.
  virtual Bytes RemoveBackground(const Bytes& image_png, const Bytes& depth_png) = 0;
  // Single-view reconstruction: returns GLB bytes.
  virtual Bytes ImageToMesh(const Bytes& image_png) = 0;

  std::string CompositeId() const;
};

struct MockOptions {
  // Relief depth of the extruded heightfield, in image-plane half widths
  // per unit depth value. 1.3 minimizes the visible-surface chamfer of a
  // unit sphere rendered from the standard viewpoint.
  double relief = 1.3;
  // Sample every n-th pixel when building the heightfield grid.
  int pixel_stride = 4;
  // Quads whose corner depth values differ by more than this are dropped,
  // which keeps silhouette steps from turning into walls.
  double max_depth_jump = 0.08;
};

inline constexpr char kMockEndpoint[] = "mock";
inline constexpr char kBuiltinEndpoint[] = "builtin";

struct BackendConfig {
  std::string t2i_endpoint = kMockEndpoint;
  // "builtin" thresholds on the depth map instead of calling a service.
  std::string bg_removal_endpoint = kMockEndpoint;
  std::string img2mesh_endpoint = kMockEndpoint;
  double timeout_s = 120.0;
  int max_retries = 2;
  double backoff_base_s = 1.0;
  MockOptions mock;
  AnchorOptions anchor;

  void Validate() const;
};

// Dispatches each stage to the mock, builtin or HTTP implementation named
// in the config.
std::unique_ptr<Backend> MakeBackend(const BackendConfig& config);

}  // namespace propforge

#endif  // PROPFORGE_PIPELINE_BACKEND_H_
