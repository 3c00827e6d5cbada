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

#include "propforge/mesh/mesh.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "propforge/common/error.h"
#include "propforge/common/random.h"

namespace propforge {
namespace {

bool Finite(const Vec3& v) {
  return std::isfinite(v.x()) && std::isfinite(v.y()) && std::isfinite(v.z());
}

}  // namespace

void ValidateMesh(const TriangleMesh& mesh, bool require_area) {
  for (std::size_t i = 0; i < mesh.vertices.size(); ++i) {
    if (!Finite(mesh.vertices[i])) {
      Throw(ErrorCode::kInvalidArgument,
            "vertex " + std::to_string(i) + " has a non-finite coordinate");
    }
  }
  if (mesh.has_colors() && mesh.vertex_colors.size() != mesh.vertices.size()) {
    Throw(ErrorCode::kInvalidArgument, "vertex color count does not match vertex count");
  }
  const auto n = static_cast<std::uint32_t>(mesh.vertices.size());
  for (std::size_t f = 0; f < mesh.faces.size(); ++f) {
    for (std::uint32_t idx : mesh.faces[f]) {
      if (idx >= n) {
        Throw(ErrorCode::kIndexOutOfRange,
              "face " + std::to_string(f) + " references vertex " +
                  std::to_string(idx) + " of " + std::to_string(n));
      }
    }
  }
  if (require_area) {
    if (mesh.faces.empty()) Throw(ErrorCode::kEmptyMesh, "mesh has no faces");
    if (!(SurfaceArea(mesh) > 0.0)) {
      Throw(ErrorCode::kZeroAreaMesh, "mesh has no face with nonzero area");
    }
  }
}

double TriangleArea(const Vec3& a, const Vec3& b, const Vec3& c) {
  return 0.5 * (b - a).cross(c - a).norm();
}

double SurfaceArea(const TriangleMesh& mesh) {
  double area = 0.0;
  for (const Face& f : mesh.faces) {
    area += TriangleArea(mesh.vertices[f[0]], mesh.vertices[f[1]],
                         mesh.vertices[f[2]]);
  }
  return area;
}

PointCloud SampleSurface(const TriangleMesh& mesh, std::size_t n,
                         std::uint64_t seed) {
  if (n == 0) Throw(ErrorCode::kInvalidArgument, "sample count must be >= 1");

  // Cumulative area over nondegenerate faces only.
  std::vector<std::uint32_t> face_ids;
  std::vector<double> cumulative;
  double total = 0.0;
  for (std::size_t f = 0; f < mesh.faces.size(); ++f) {
    const Face& face = mesh.faces[f];
    const double area = TriangleArea(mesh.vertices[face[0]], mesh.vertices[face[1]],
                                     mesh.vertices[face[2]]);
    if (area > 0.0) {
      total += area;
      face_ids.push_back(static_cast<std::uint32_t>(f));
      cumulative.push_back(total);
    }
  }
  if (face_ids.empty() || !(total > 0.0)) {
    Throw(ErrorCode::kZeroAreaMesh, "cannot sample a mesh with zero surface area");
  }

  Rng rng(seed);
  PointCloud cloud;
  cloud.seed = seed;
  cloud.points.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double target = rng.Uniform() * total;
    auto it = std::upper_bound(cumulative.begin(), cumulative.end(), target);
    if (it == cumulative.end()) --it;
    const Face& face = mesh.faces[face_ids[it - cumulative.begin()]];
    const Vec3& a = mesh.vertices[face[0]];
    const Vec3& b = mesh.vertices[face[1]];
    const Vec3& c = mesh.vertices[face[2]];
    const double s = std::sqrt(rng.Uniform());
    const double t = rng.Uniform();
    cloud.points.push_back((1.0 - s) * a + s * (1.0 - t) * b + s * t * c);
  }
  return cloud;
}

Aabb BoundingBox(const std::vector<Vec3>& points) {
  if (points.empty()) Throw(ErrorCode::kEmptyMesh, "bounding box of an empty point set");
  Aabb box{points.front(), points.front()};
  for (const Vec3& p : points) {
    box.min = box.min.cwiseMin(p);
    box.max = box.max.cwiseMax(p);
  }
  return box;
}

Aabb BoundingBox(const TriangleMesh& mesh) { return BoundingBox(mesh.vertices); }

Vec3 SurfaceCentroid(const TriangleMesh& mesh) {
  Vec3 weighted = Vec3::Zero();
  double total = 0.0;
  for (const Face& f : mesh.faces) {
    const Vec3& a = mesh.vertices[f[0]];
    const Vec3& b = mesh.vertices[f[1]];
    const Vec3& c = mesh.vertices[f[2]];
    const double area = TriangleArea(a, b, c);
    weighted += area * (a + b + c) / 3.0;
    total += area;
  }
  if (!(total > 0.0)) {
    Throw(ErrorCode::kZeroAreaMesh, "surface centroid undefined for zero-area mesh");
  }
  return weighted / total;
}

NormalizationResult NormalizeUnitSphere(const TriangleMesh& mesh) {
  ValidateMesh(mesh, /*require_area=*/false);
  const bool coincident = std::all_of(mesh.vertices.begin(), mesh.vertices.end(),
                                      [&](const Vec3& v) { return v == mesh.vertices[0]; });
  if (coincident) Throw(ErrorCode::kZeroExtent, "all vertices coincide");
  ValidateMesh(mesh);
  NormalizationResult result;
  result.center = SurfaceCentroid(mesh);
  double scale = 0.0;
  for (const Vec3& v : mesh.vertices) scale = std::max(scale, (v - result.center).norm());
  if (!(scale > 0.0)) Throw(ErrorCode::kZeroExtent, "all vertices coincide");
  result.scale = scale;
  result.mesh = mesh;
  for (Vec3& v : result.mesh.vertices) v = (v - result.center) / scale;
  return result;
}

PointCloud NormalizeUnitSphere(const PointCloud& cloud) {
  if (cloud.points.empty()) Throw(ErrorCode::kEmptyMesh, "empty point cloud");
  Vec3 center = Vec3::Zero();
  for (const Vec3& p : cloud.points) center += p;
  center /= static_cast<double>(cloud.points.size());
  double scale = 0.0;
  for (const Vec3& p : cloud.points) scale = std::max(scale, (p - center).norm());
  if (!(scale > 0.0)) Throw(ErrorCode::kZeroExtent, "all points coincide");
  PointCloud out;
  out.seed = cloud.seed;
  out.points.reserve(cloud.points.size());
  for (const Vec3& p : cloud.points) out.points.push_back((p - center) / scale);
  return out;
}

TriangleMesh Transformed(const TriangleMesh& mesh, const Eigen::Matrix3d& linear,
                         const Vec3& translation) {
  TriangleMesh out = mesh;
  for (Vec3& v : out.vertices) v = linear * v + translation;
  return out;
}

TriangleMesh Translated(const TriangleMesh& mesh, const Vec3& offset) {
  TriangleMesh out = mesh;
  for (Vec3& v : out.vertices) v += offset;
  return out;
}

double MaxVertexNorm(const TriangleMesh& mesh) {
  double m = 0.0;
  for (const Vec3& v : mesh.vertices) m = std::max(m, v.norm());
  return m;
}

}  // namespace propforge
