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

#ifndef PROPFORGE_MESH_MESH_H_
#define PROPFORGE_MESH_MESH_H_

#include <array>
#include <cstdint>
#include <vector>

#include <Eigen/Core>
#include <Eigen/Geometry>

namespace propforge {

using Vec3 = Eigen::Vector3d;
using Face = std::array<std::uint32_t, 3>;

// Indexed triangle geometry. vertex_colors is either empty or parallel to
// vertices, with RGB components in [0, 1].
struct TriangleMesh {
  std::vector<Vec3> vertices;
  std::vector<Face> faces;
  std::vector<Vec3> vertex_colors;

  bool has_colors() const { return !vertex_colors.empty(); }
};

// Checks indices, finiteness and color arity. With require_area, also demands
// at least one face of nonzero area. Throws Error on violation.
void ValidateMesh(const TriangleMesh& mesh, bool require_area = true);

struct PointCloud {
  std::vector<Vec3> points;
  std::uint64_t seed = 0;
};

struct Aabb {
  Vec3 min = Vec3::Zero();
  Vec3 max = Vec3::Zero();

  Vec3 extent() const { return max - min; }
  Vec3 center() const { return 0.5 * (min + max); }
};

struct NormalizationResult {
  TriangleMesh mesh;
  Vec3 center = Vec3::Zero();
  double scale = 1.0;
};

double TriangleArea(const Vec3& a, const Vec3& b, const Vec3& c);

double SurfaceArea(const TriangleMesh& mesh);

// Area-weighted uniform surface samples. Zero-area faces never receive
// samples. Same mesh and seed give the same points on every platform.
PointCloud SampleSurface(const TriangleMesh& mesh, std::size_t n,
                         std::uint64_t seed);

Aabb BoundingBox(const TriangleMesh& mesh);
Aabb BoundingBox(const std::vector<Vec3>& points);

// Mean of triangle centroids weighted by triangle area.
Vec3 SurfaceCentroid(const TriangleMesh& mesh);

// Centers on the surface centroid and divides by the largest vertex
// distance from it, so the farthest vertex lands on the unit sphere.
NormalizationResult NormalizeUnitSphere(const TriangleMesh& mesh);

// Point-set analogue: centroid of the points, largest point distance.
PointCloud NormalizeUnitSphere(const PointCloud& cloud);

TriangleMesh Transformed(const TriangleMesh& mesh, const Eigen::Matrix3d& linear,
                         const Vec3& translation);

TriangleMesh Translated(const TriangleMesh& mesh, const Vec3& offset);

double MaxVertexNorm(const TriangleMesh& mesh);

}  // namespace propforge

#endif  // PROPFORGE_MESH_MESH_H_
