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
#include <numbers>
#include <string>

#include <gtest/gtest.h>

#include "propforge/common/error.h"
#include "propforge/common/file_util.h"
#include "propforge/common/random.h"
#include "propforge/mesh/fixtures.h"
#include "propforge/mesh/mesh.h"
#include "propforge/mesh/mesh_io.h"

namespace propforge {
namespace {

const std::filesystem::path kData = PROPFORGE_TEST_DATA;

ErrorCode CodeOf(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no propforge::Error thrown";
  return ErrorCode::kInvalidArgument;
}

TEST(MeshTest, TriangleAreaOfRightTriangle) {
  EXPECT_DOUBLE_EQ(TriangleArea(Vec3(0, 0, 0), Vec3(3, 0, 0), Vec3(0, 4, 0)), 6.0);
}

TEST(MeshTest, UnitCubeAreaAndBox) {
  const TriangleMesh cube = MakeUnitCube();
  EXPECT_NEAR(SurfaceArea(cube), 6.0, 1e-12);
  const Aabb box = BoundingBox(cube);
  EXPECT_TRUE(box.min.isApprox(Vec3(-0.5, -0.5, -0.5)));
  EXPECT_TRUE(box.max.isApprox(Vec3(0.5, 0.5, 0.5)));
}

TEST(MeshTest, ValidationErrors) {
  TriangleMesh empty;
  EXPECT_EQ(CodeOf([&] { ValidateMesh(empty); }), ErrorCode::kEmptyMesh);

  TriangleMesh bad = MakeUnitCube();
  bad.faces.push_back({0, 1, 99});
  EXPECT_EQ(CodeOf([&] { ValidateMesh(bad); }), ErrorCode::kIndexOutOfRange);

  TriangleMesh flat;
  flat.vertices = {Vec3(0, 0, 0), Vec3(1, 1, 1), Vec3(2, 2, 2)};
  flat.faces = {{0, 1, 2}};
  EXPECT_EQ(CodeOf([&] { ValidateMesh(flat); }), ErrorCode::kZeroAreaMesh);
  EXPECT_EQ(CodeOf([&] { SampleSurface(flat, 10, 1); }), ErrorCode::kZeroAreaMesh);

  TriangleMesh point;
  point.vertices = {Vec3(1, 1, 1), Vec3(1, 1, 1), Vec3(1, 1, 1)};
  point.faces = {{0, 1, 2}};
  EXPECT_EQ(CodeOf([&] { NormalizeUnitSphere(point); }), ErrorCode::kZeroExtent);
}

TEST(MeshTest, SamplingIsSeededAndOnSurface) {
  const TriangleMesh cube = MakeUnitCube();
  const PointCloud a = SampleSurface(cube, 2000, 11);
  const PointCloud b = SampleSurface(cube, 2000, 11);
  const PointCloud c = SampleSurface(cube, 2000, 12);
  ASSERT_EQ(a.points.size(), 2000u);
  EXPECT_EQ(a.points, b.points);
  EXPECT_NE(a.points, c.points);
  for (const Vec3& p : a.points) {
    // On the surface of the cube: max coordinate magnitude is 0.5.
    EXPECT_NEAR(p.cwiseAbs().maxCoeff(), 0.5, 1e-12);
  }
}

TEST(MeshTest, SamplingIsAreaWeighted) {
  // Two disjoint squares, the second with 3x the area.
  const TriangleMesh small = MakeBox(Vec3(0, 0, 0), Vec3(1, 1, 1e-9));
  TriangleMesh big = MakeBox(Vec3(10, 0, 0), Vec3(10 + std::sqrt(3.0), std::sqrt(3.0), 1e-9));
  const TriangleMesh both = Concatenate({small, big});
  const PointCloud cloud = SampleSurface(both, 40000, 5);
  int in_big = 0;
  for (const Vec3& p : cloud.points) in_big += p.x() > 5.0;
  // Binomial with p = 0.75, sd ~ 0.0022.
  EXPECT_NEAR(in_big / 40000.0, 0.75, 0.01);
}

TEST(MeshTest, NormalizationProperties) {
  for (const auto& [name, mesh] : BundledFixtures()) {
    SCOPED_TRACE(name);
    const NormalizationResult n = NormalizeUnitSphere(mesh);
    EXPECT_NEAR(MaxVertexNorm(n.mesh), 1.0, 1e-12);
    const NormalizationResult again = NormalizeUnitSphere(n.mesh);
    for (std::size_t i = 0; i < n.mesh.vertices.size(); ++i) {
      EXPECT_LE((again.mesh.vertices[i] - n.mesh.vertices[i]).norm(), 1e-12);
    }
  }
}

TEST(MeshTest, NormalizationIgnoresSimilarityTransforms) {
  const TriangleMesh base = MakeCornerBracket();
  const TriangleMesh moved = Transformed(base, 3.5 * Eigen::Matrix3d::Identity(), Vec3(4, -2, 9));
  const TriangleMesh a = NormalizeUnitSphere(base).mesh;
  const TriangleMesh b = NormalizeUnitSphere(moved).mesh;
  for (std::size_t i = 0; i < a.vertices.size(); ++i) {
    EXPECT_LE((a.vertices[i] - b.vertices[i]).norm(), 1e-12);
  }
}

TEST(MeshTest, IcosphereIsOnTheSphere) {
  const TriangleMesh sphere = MakeIcosphere(3, 2.0);
  for (const Vec3& v : sphere.vertices) EXPECT_NEAR(v.norm(), 2.0, 1e-12);
  // Euler characteristic of a closed genus-0 surface.
  const long e = static_cast<long>(sphere.faces.size()) * 3 / 2;
  EXPECT_EQ(static_cast<long>(sphere.vertices.size()) - e + static_cast<long>(sphere.faces.size()), 2);
}

TEST(MeshIoTest, ObjPolygonsAndNegativeIndices) {
  const TriangleMesh m = LoadMesh(kData / "quad_polygon.obj");
  EXPECT_EQ(m.vertices.size(), 7u);
  ASSERT_EQ(m.faces.size(), 3u);  // quad fan-triangulated plus one triangle
  EXPECT_NEAR(SurfaceArea(m), 1.0 + 0.5, 1e-12);
  const Face last = m.faces.back();
  EXPECT_EQ(last, (Face{4, 5, 6}));
}

TEST(MeshIoTest, ObjErrors) {
  EXPECT_EQ(CodeOf([] { ParseObj("v 0 0 0\nv 1 0 0\nf 1 2 3\n"); }), ErrorCode::kIndexOutOfRange);
  EXPECT_EQ(CodeOf([] { ParseObj("v 0 0 zero\n"); }), ErrorCode::kParseError);
}

TEST(MeshIoTest, ReadsIndependentlyWrittenGlb) {
  const TriangleMesh cube = LoadMesh(kData / "cube.glb");
  EXPECT_EQ(cube.vertices.size(), 8u);
  EXPECT_EQ(cube.faces.size(), 12u);
  EXPECT_NEAR(SurfaceArea(cube), 24.0, 1e-12);
  const Aabb box = BoundingBox(cube);
  EXPECT_TRUE(box.min.isApprox(Vec3(-1, -1, -1)));
  EXPECT_TRUE(box.max.isApprox(Vec3(1, 1, 1)));
}

TEST(MeshIoTest, GlbAndObjRoundTrip) {
  TriangleMesh m = MakeCone(0.5, 1.0, 16);
  m.vertex_colors.assign(m.vertices.size(), Vec3(0.25, 0.5, 0.75));
  const TriangleMesh g = ParseGlb(WriteGlb(m));
  ASSERT_EQ(g.vertices.size(), m.vertices.size());
  EXPECT_EQ(g.faces, m.faces);
  for (std::size_t i = 0; i < m.vertices.size(); ++i) {
    // GLB stores float32.
    EXPECT_LE((g.vertices[i] - m.vertices[i]).norm(), 1e-6);
    EXPECT_LE((g.vertex_colors[i] - m.vertex_colors[i]).norm(), 1e-6);
  }
  const TriangleMesh o = ParseObj(WriteObj(m));
  EXPECT_EQ(o.faces, m.faces);
  for (std::size_t i = 0; i < m.vertices.size(); ++i) {
    EXPECT_LE((o.vertices[i] - m.vertices[i]).norm(), 1e-12);
  }
}

TEST(MeshIoTest, GlbErrors) {
  const Bytes junk = {'g', 'l', 'T', 'X', 0, 0, 0, 0};
  EXPECT_EQ(CodeOf([&] { ParseGlb(junk); }), ErrorCode::kParseError);
  Bytes truncated = WriteGlb(MakeUnitCube());
  truncated.resize(truncated.size() / 2);
  EXPECT_EQ(CodeOf([&] { ParseGlb(truncated); }), ErrorCode::kParseError);
}

TEST(MeshIoTest, LoadRejectsEmptyFile) {
  const auto path = std::filesystem::temp_directory_path() / "propforge_empty.obj";
  WriteFileAtomic(path, std::string_view("# nothing\n"));
  EXPECT_EQ(CodeOf([&] { LoadMesh(path); }), ErrorCode::kEmptyMesh);
  std::filesystem::remove(path);
}

TEST(MeshTest, IcosphereAreaApproachesSphere) {
  EXPECT_NEAR(SurfaceArea(MakeIcosphere(3)) / (4.0 * std::numbers::pi), 1.0, 0.01);
}

TEST(MeshTest, SingleTriangleSamplesAreInside) {
  TriangleMesh tri;
  tri.vertices = {Vec3(0, 0, 0), Vec3(2, 0, 1), Vec3(0, 3, 0)};
  tri.faces = {{0, 1, 2}};
  const Vec3 e1 = tri.vertices[1] - tri.vertices[0];
  const Vec3 e2 = tri.vertices[2] - tri.vertices[0];
  for (const Vec3& p : SampleSurface(tri, 1000, 13).points) {
    // Solve p = u e1 + v e2 in the plane of the triangle.
    Eigen::Matrix<double, 3, 2> basis;
    basis << e1, e2;
    const Eigen::Vector2d uv = basis.colPivHouseholderQr().solve(p - tri.vertices[0]);
    EXPECT_LE((basis * uv - (p - tri.vertices[0])).norm(), 1e-12);
    EXPECT_GE(uv.x(), -1e-12);
    EXPECT_GE(uv.y(), -1e-12);
    EXPECT_LE(uv.x() + uv.y(), 1.0 + 1e-12);
  }
}

TEST(MeshTest, BoundingBoxCases) {
  const std::vector<Vec3> single = {Vec3(1, -2, 3)};
  const Aabb point = BoundingBox(single);
  EXPECT_EQ(point.min, single[0]);
  EXPECT_EQ(point.max, single[0]);
  const Aabb shifted = BoundingBox(Translated(MakeUnitCube(), Vec3(1, 0, 0)));
  EXPECT_TRUE(shifted.min.isApprox(Vec3(0.5, -0.5, -0.5)));
  EXPECT_TRUE(shifted.max.isApprox(Vec3(1.5, 0.5, 0.5)));
}

TEST(MeshTest, NormalizationOfKnownCubes) {
  const TriangleMesh cube = MakeBox(Vec3(-2, -2, -2), Vec3(2, 2, 2));
  const NormalizationResult n = NormalizeUnitSphere(cube);
  EXPECT_LE(n.center.norm(), 1e-15);
  EXPECT_NEAR(n.scale, 2.0 * std::sqrt(3.0), 1e-12);
  for (const Vec3& v : n.mesh.vertices) EXPECT_NEAR(v.norm(), 1.0, 1e-12);

  const NormalizationResult again = NormalizeUnitSphere(n.mesh);
  EXPECT_LE(again.center.norm(), 1e-15);
  EXPECT_NEAR(again.scale, 1.0, 1e-15);

  const TriangleMesh moved = NormalizeUnitSphere(Translated(cube, Vec3(5, 0, 0))).mesh;
  for (std::size_t i = 0; i < moved.vertices.size(); ++i) {
    EXPECT_LE((moved.vertices[i] - n.mesh.vertices[i]).norm(), 1e-12);
  }
}

TEST(MeshIoTest, MinimalObj) {
  const TriangleMesh m = ParseObj("v 0 0 0\nv 1 0 0\nv 0 1 0\nf 1 2 3\n");
  EXPECT_EQ(m.vertices.size(), 3u);
  EXPECT_EQ(m.faces.size(), 1u);
  EXPECT_EQ(ParseObj("v 0 0 0\nv 1 0 0\nv 1 1 0\nv 0 1 0\nf 1 2 3 4\n").faces.size(), 2u);
}

}  // namespace
}  // namespace propforge
