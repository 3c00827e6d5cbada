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

#include <cmath>
#include <algorithm>
#include <numbers>
#include <set>

#include <gtest/gtest.h>

#include "propforge/common/error.h"
#include "propforge/common/png.h"
#include "propforge/mesh/fixtures.h"
#include "propforge/render/depth_render.h"

namespace propforge {
namespace {

// A triangle in the z = z0 plane covering roughly [-s, s]^2.
TriangleMesh FacingTriangle(double z0, double s) {
  TriangleMesh m;
  m.vertices = {Vec3(-s, -s, z0), Vec3(s, -s, z0), Vec3(0, s, z0)};
  m.faces = {{0, 1, 2}};
  return m;
}

// Largest gap between a flat facet and the sphere it approximates: the
// slack allowed in the radial monotonicity check.
double FacetSag(const TriangleMesh& sphere) {
  double longest = 0.0;
  for (const Face& f : sphere.faces) {
    for (int i = 0; i < 3; ++i) {
      longest = std::max(longest, (sphere.vertices[f[i]] - sphere.vertices[f[(i + 1) % 3]]).norm());
    }
  }
  const double half_angle = std::asin(0.5 * longest);
  return 1.0 - std::cos(half_angle);
}

CameraPose FrontCamera() {
  CameraPose c;
  c.elevation_deg = 0;
  c.azimuth_deg = 0;
  c.distance = 3;
  return c;  // on +z looking toward the origin
}

TEST(CameraTest, StandardViewpointPosition) {
  const CameraPose c = StandardViewpoint();
  EXPECT_EQ(c.elevation_deg, 35.0);
  EXPECT_EQ(c.azimuth_deg, 30.0);
  const double el = 35.0 * std::numbers::pi / 180.0;
  const double az = 30.0 * std::numbers::pi / 180.0;
  const Vec3 expected(3 * std::cos(el) * std::sin(az), 3 * std::sin(el),
                      3 * std::cos(el) * std::cos(az));
  EXPECT_LE((c.Position() - expected).norm(), 1e-12);
  // Right-handed orthonormal frame with the up vector above the horizon.
  EXPECT_NEAR(c.Forward().dot(c.Right()), 0.0, 1e-12);
  EXPECT_NEAR(c.Forward().dot(c.Up()), 0.0, 1e-12);
  EXPECT_NEAR(c.Right().norm(), 1.0, 1e-12);
  EXPECT_GT(c.Up().y(), 0.0);
}

TEST(CameraTest, Validation) {
  CameraPose c = StandardViewpoint();
  c.distance = 0.9;
  EXPECT_THROW(c.Validate(), Error);
  c = StandardViewpoint();
  c.projection.fov_deg = 150;
  EXPECT_THROW(c.Validate(), Error);
  c = StandardViewpoint();
  c.projection.kind = ProjectionKind::kOrthographic;
  c.distance = 0.5;
  EXPECT_NO_THROW(c.Validate());
}

TEST(RenderTest, ZBufferKeepsNearestRegardlessOfOrder) {
  const TriangleMesh near = FacingTriangle(0.5, 0.6);
  const TriangleMesh far = FacingTriangle(-0.5, 0.9);
  for (const TriangleMesh& scene : {Concatenate({near, far}), Concatenate({far, near})}) {
    const DepthRender r = RenderDepth(scene, FrontCamera(), 64, 64);
    // The image center sees the near triangle: camera depth 3 - 0.5.
    EXPECT_NEAR(r.camera_depth[32 * 64 + 32], 2.5, 1e-9);
    EXPECT_FLOAT_EQ(r.image.at(32, 32), 1.0f);
    EXPECT_NEAR(r.nearest_depth, 2.5, 1e-9);
    EXPECT_NEAR(r.farthest_depth, 3.5, 1e-9);
  }
}

TEST(RenderTest, BackgroundIsExactlyZeroAndSurfacePositive) {
  const DepthRender r = RenderDepth(MakeUnitCube(), StandardViewpoint(), 128, 128);
  std::size_t covered = 0;
  for (std::size_t i = 0; i < r.image.values.size(); ++i) {
    if (std::isfinite(r.camera_depth[i])) {
      ++covered;
      EXPECT_GE(r.image.values[i], 0.02f);
      EXPECT_LE(r.image.values[i], 1.0f);
    } else {
      EXPECT_EQ(r.image.values[i], 0.0f);
    }
  }
  EXPECT_EQ(covered, r.covered_pixels);
  EXPECT_GT(covered, 0u);
  EXPECT_EQ(r.image.at(0, 0), 0.0f);
}

TEST(RenderTest, SphereDepthFallsOffRadially) {
  // Camera on +z: the icosphere pole vertex projects to the image center,
  // which is the corner shared by the four middle pixels.
  const TriangleMesh sphere = MakeIcosphere(4);
  const int size = 128;
  const DepthRender r = RenderDepth(sphere, FrontCamera(), size, size);
  const float center = std::max({r.image.at(size / 2 - 1, size / 2 - 1), r.image.at(size / 2, size / 2 - 1),
                                r.image.at(size / 2 - 1, size / 2), r.image.at(size / 2, size / 2)});
  EXPECT_FLOAT_EQ(center, 1.0f);
  const float tol = static_cast<float>(FacetSag(sphere) / (r.farthest_depth - r.nearest_depth));
  int checked = 0;
  for (int y = 0; y < size; ++y) {
    for (int x = 0; x < size; ++x) {
      const float v = r.image.at(x, y);
      if (v == 0.0f) continue;
      // Step one pixel toward the center along the larger offset.
      const double dx = x + 0.5 - size / 2.0;
      const double dy = y + 0.5 - size / 2.0;
      if (std::abs(dx) < 1 && std::abs(dy) < 1) continue;
      const int nx = std::abs(dx) >= std::abs(dy) ? x - (dx > 0 ? 1 : -1) : x;
      const int ny = std::abs(dx) >= std::abs(dy) ? y : y - (dy > 0 ? 1 : -1);
      EXPECT_LE(v, r.image.at(nx, ny) + tol) << x << "," << y;
      ++checked;
    }
  }
  EXPECT_GT(checked, 1000);
}

TEST(RenderTest, VisiblePointsLieOnTheSurface) {
  const TriangleMesh sphere = MakeIcosphere(4);
  const DepthRender r = RenderDepth(sphere, StandardViewpoint(), 96, 96);
  const std::vector<Vec3> pts = VisibleSurfacePoints(r, StandardViewpoint());
  ASSERT_EQ(pts.size(), r.covered_pixels);
  const Vec3 eye = StandardViewpoint().Position();
  for (const Vec3& p : pts) {
    // Flat facets sit inside the unit sphere by at most the chord sag.
    EXPECT_LE(p.norm(), 1.0 + 1e-9);
    EXPECT_GE(p.norm(), 0.99);
    // Front hemisphere only.
    EXPECT_GT(p.dot(eye), 0.0);
  }
}

TEST(RenderTest, Deterministic) {
  const DepthRender a = RenderDepth(MakeCornerBracket(), StandardViewpoint(), 80, 60);
  const DepthRender b = RenderDepth(MakeCornerBracket(), StandardViewpoint(), 80, 60);
  EXPECT_EQ(a.image.values, b.image.values);
}

TEST(RenderTest, NearIsBrightOption) {
  RenderOptions opts;
  opts.near_is_bright = false;
  const TriangleMesh scene = Concatenate({FacingTriangle(0.5, 0.6), FacingTriangle(-0.5, 0.9)});
  const DepthRender r = RenderDepth(scene, FrontCamera(), 64, 64, opts);
  EXPECT_FLOAT_EQ(r.image.at(32, 32), 0.02f);
}

TEST(RenderTest, CameraInsideGeometryFlagsDegenerate) {
  // Every vertex behind an orthographic camera placed in front of the mesh.
  CameraPose c = FrontCamera();
  c.projection.kind = ProjectionKind::kOrthographic;
  const TriangleMesh behind = FacingTriangle(5.0, 0.5);
  const DepthRender r = RenderDepth(behind, c, 16, 16);
  EXPECT_TRUE(r.degenerate_camera);
  EXPECT_EQ(r.covered_pixels, 0u);
}

TEST(RenderTest, OrthographicFlatSceneIsUniform) {
  CameraPose c = FrontCamera();
  c.projection.kind = ProjectionKind::kOrthographic;
  const DepthRender r = RenderDepth(FacingTriangle(0.0, 1.0), c, 32, 32);
  std::set<float> values;
  for (float v : r.image.values) {
    if (v > 0.0f) values.insert(v);
  }
  EXPECT_EQ(values, std::set<float>{1.0f});
}

TEST(CameraTest, StandardViewpointLooksAtOrigin) {
  const CameraPose c = StandardViewpoint();
  EXPECT_LE((c.Forward() + c.Position().normalized()).norm(), 1e-12);
  EXPECT_EQ(StandardViewpoint().Position(), c.Position());
}

TEST(DepthCodecTest, SinglePixelBytes) {
  DepthImage img;
  img.width = 1;
  img.height = 1;
  img.values = {1.0f};
  EXPECT_EQ(DecodePng(EncodeDepthPng(img)).pixels, std::vector<std::uint8_t>{255});
  img.values = {0.0f};
  EXPECT_EQ(DecodePng(EncodeDepthPng(img)).pixels, std::vector<std::uint8_t>{0});
}

TEST(DepthCodecTest, PngQuantizesAndRawIsExact) {
  const DepthRender r = RenderDepth(MakeIcosphere(2), StandardViewpoint(), 40, 30);
  const DepthImage png = DecodeDepthPng(EncodeDepthPng(r.image));
  ASSERT_EQ(png.width, 40);
  ASSERT_EQ(png.height, 30);
  for (std::size_t i = 0; i < png.values.size(); ++i) {
    EXPECT_LE(std::abs(png.values[i] - r.image.values[i]), 0.5f / 255.0f + 1e-6f);
  }
  const DepthImage raw = DecodeRawDepth(EncodeRawDepth(r.image));
  EXPECT_EQ(raw.values, r.image.values);
  Bytes bad = EncodeRawDepth(r.image);
  bad.pop_back();
  EXPECT_THROW(DecodeRawDepth(bad), Error);
}

}  // namespace
}  // namespace propforge
