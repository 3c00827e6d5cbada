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

#ifndef PROPFORGE_RENDER_DEPTH_RENDER_H_
#define PROPFORGE_RENDER_DEPTH_RENDER_H_

#include <span>
#include <vector>

#include "propforge/common/hash.h"
#include "propforge/mesh/mesh.h"

namespace propforge {

enum class ProjectionKind { kPerspective, kOrthographic };

struct Projection {
  ProjectionKind kind = ProjectionKind::kPerspective;
  double fov_deg = 40.0;      // vertical field of view, perspective only
  double half_extent = 1.2;   // half the vertical view size, orthographic only
};

// Camera on a sphere around the origin, looking at the origin with +y up.
// Elevation is measured from the xz-plane; azimuth turns from +z toward +x.
struct CameraPose {
  double elevation_deg = 35.0;
  double azimuth_deg = 30.0;
  double distance = 3.0;
  Projection projection;

  void Validate() const;
  Vec3 Position() const;
  Vec3 Forward() const;  // unit vector from the camera toward the origin
  Vec3 Right() const;
  Vec3 Up() const;
};

// 35 degrees above the ground plane, rotated 30 degrees horizontally, at
// three normalized radii with a 40 degree perspective lens.
CameraPose StandardViewpoint();

inline constexpr int kDefaultDepthResolution = 512;

// Row-major depth raster in [0, 1]: 0 is background. With the default
// polarity 1 is the nearest rendered surface.
struct DepthImage {
  int width = 0;
  int height = 0;
  std::vector<float> values;

  float at(int x, int y) const { return values[static_cast<std::size_t>(y) * width + x]; }
  void Validate() const;
};

struct RenderOptions {
  bool near_is_bright = true;
  // Value assigned to the farthest covered surface; must be in (0, 1).
  double far_value = 0.02;
};

struct DepthRender {
  DepthImage image;
  // Camera-space depth along the view axis per pixel; +inf where nothing was hit.
  std::vector<double> camera_depth;
  double nearest_depth = 0.0;
  double farthest_depth = 0.0;
  std::size_t covered_pixels = 0;
  // Nothing in front of the camera: the image is all background.
  bool degenerate_camera = false;
};

// Z-buffered rasterization at pixel centers, one sample per pixel, no
// back-face culling, triangles clipped at a near plane.
DepthRender RenderDepth(const TriangleMesh& mesh, const CameraPose& camera, int width,
                        int height, const RenderOptions& options = {});

// World-space points for every covered pixel center of a render.
std::vector<Vec3> VisibleSurfacePoints(const DepthRender& render, const CameraPose& camera);

// 8-bit grayscale PNG with byte = round(255 * value).
Bytes EncodeDepthPng(const DepthImage& image);
// Accepts any 8-bit PNG; the first channel is read as depth.
DepthImage DecodeDepthPng(std::span<const std::uint8_t> png);

// Raw dump: uint32 width, uint32 height, then row-major float32, all
// little-endian.
Bytes EncodeRawDepth(const DepthImage& image);
DepthImage DecodeRawDepth(std::span<const std::uint8_t> data);

}  // namespace propforge

#endif  // PROPFORGE_RENDER_DEPTH_RENDER_H_
