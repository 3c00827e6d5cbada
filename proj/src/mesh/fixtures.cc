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

#include "propforge/mesh/fixtures.h"

#include <cmath>
#include <map>
#include <numbers>

#include "propforge/common/error.h"

namespace propforge {

TriangleMesh MakeBox(const Vec3& lo, const Vec3& hi) {
  TriangleMesh mesh;
  for (int i = 0; i < 8; ++i) {
    mesh.vertices.emplace_back((i & 1) ? hi.x() : lo.x(), (i & 2) ? hi.y() : lo.y(),
                               (i & 4) ? hi.z() : lo.z());
  }
  // Two triangles per side, counter-clockwise seen from outside.
  mesh.faces = {{0, 2, 1}, {1, 2, 3},   // -z
                {4, 5, 6}, {5, 7, 6},   // +z
                {0, 1, 4}, {1, 5, 4},   // -y
                {2, 6, 3}, {3, 6, 7},   // +y
                {0, 4, 2}, {2, 4, 6},   // -x
                {1, 3, 5}, {3, 7, 5}};  // +x
  return mesh;
}

TriangleMesh MakeUnitCube() {
  return MakeBox(Vec3::Constant(-0.5), Vec3::Constant(0.5));
}

TriangleMesh MakeIcosphere(int subdivisions, double radius) {
  if (subdivisions < 0) Throw(ErrorCode::kInvalidArgument, "negative subdivision count");
  TriangleMesh mesh;
  // Icosahedron with poles on the z axis and two staggered rings of five.
  const double ring_z = 1.0 / std::sqrt(5.0);
  const double ring_r = 2.0 / std::sqrt(5.0);
  mesh.vertices.emplace_back(0.0, 0.0, 1.0);
  for (int i = 0; i < 5; ++i) {
    const double a = 2.0 * std::numbers::pi * i / 5.0;
    mesh.vertices.emplace_back(ring_r * std::cos(a), ring_r * std::sin(a), ring_z);
  }
  for (int i = 0; i < 5; ++i) {
    const double a = 2.0 * std::numbers::pi * (i + 0.5) / 5.0;
    mesh.vertices.emplace_back(ring_r * std::cos(a), ring_r * std::sin(a), -ring_z);
  }
  mesh.vertices.emplace_back(0.0, 0.0, -1.0);
  for (std::uint32_t i = 0; i < 5; ++i) {
    const std::uint32_t up = 1 + i, up_next = 1 + (i + 1) % 5;
    const std::uint32_t lo = 6 + i, lo_next = 6 + (i + 1) % 5;
    mesh.faces.push_back({0, up, up_next});
    mesh.faces.push_back({up, lo, up_next});
    mesh.faces.push_back({up_next, lo, lo_next});
    mesh.faces.push_back({11, lo_next, lo});
  }

  for (int s = 0; s < subdivisions; ++s) {
    std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint32_t> midpoints;
    auto midpoint = [&](std::uint32_t a, std::uint32_t b) {
      const auto key = std::minmax(a, b);
      auto it = midpoints.find(key);
      if (it != midpoints.end()) return it->second;
      const auto idx = static_cast<std::uint32_t>(mesh.vertices.size());
      mesh.vertices.push_back((mesh.vertices[a] + mesh.vertices[b]).normalized());
      midpoints.emplace(key, idx);
      return idx;
    };
    std::vector<Face> faces;
    faces.reserve(mesh.faces.size() * 4);
    for (const Face& f : mesh.faces) {
      const std::uint32_t ab = midpoint(f[0], f[1]);
      const std::uint32_t bc = midpoint(f[1], f[2]);
      const std::uint32_t ca = midpoint(f[2], f[0]);
      faces.push_back({f[0], ab, ca});
      faces.push_back({f[1], bc, ab});
      faces.push_back({f[2], ca, bc});
      faces.push_back({ab, bc, ca});
    }
    mesh.faces = std::move(faces);
  }
  for (Vec3& v : mesh.vertices) v = radius * v.normalized();
  return mesh;
}

namespace {

TriangleMesh MakeFrustum(double bottom_radius, double top_radius, double height,
                         int segments) {
  if (segments < 3) Throw(ErrorCode::kInvalidArgument, "need at least 3 segments");
  TriangleMesh mesh;
  const auto n = static_cast<std::uint32_t>(segments);
  for (std::uint32_t i = 0; i < n; ++i) {
    const double a = 2.0 * std::numbers::pi * i / n;
    mesh.vertices.emplace_back(bottom_radius * std::cos(a), 0.0, bottom_radius * std::sin(a));
  }
  const bool apex = top_radius == 0.0;
  if (apex) {
    mesh.vertices.emplace_back(0.0, height, 0.0);
  } else {
    for (std::uint32_t i = 0; i < n; ++i) {
      const double a = 2.0 * std::numbers::pi * i / n;
      mesh.vertices.emplace_back(top_radius * std::cos(a), height, top_radius * std::sin(a));
    }
  }
  const auto bottom_center = static_cast<std::uint32_t>(mesh.vertices.size());
  mesh.vertices.emplace_back(0.0, 0.0, 0.0);
  for (std::uint32_t i = 0; i < n; ++i) {
    const std::uint32_t j = (i + 1) % n;
    mesh.faces.push_back({bottom_center, i, j});
    if (apex) {
      mesh.faces.push_back({i, n, j});
    } else {
      mesh.faces.push_back({i, n + i, j});
      mesh.faces.push_back({j, n + i, n + j});
    }
  }
  if (!apex) {
    const auto top_center = static_cast<std::uint32_t>(mesh.vertices.size());
    mesh.vertices.emplace_back(0.0, height, 0.0);
    for (std::uint32_t i = 0; i < n; ++i) {
      mesh.faces.push_back({top_center, n + (i + 1) % n, n + i});
    }
  }
  return mesh;
}

}  // namespace

TriangleMesh MakeCylinder(double radius, double height, int segments) {
  return MakeFrustum(radius, radius, height, segments);
}

TriangleMesh MakeCone(double radius, double height, int segments) {
  return MakeFrustum(radius, 0.0, height, segments);
}

TriangleMesh MakeTorus(double major_radius, double minor_radius, int major_segments,
                       int minor_segments) {
  if (major_segments < 3 || minor_segments < 3) {
    Throw(ErrorCode::kInvalidArgument, "need at least 3 segments per ring");
  }
  TriangleMesh mesh;
  const auto nu = static_cast<std::uint32_t>(major_segments);
  const auto nv = static_cast<std::uint32_t>(minor_segments);
  for (std::uint32_t i = 0; i < nu; ++i) {
    const double u = 2.0 * std::numbers::pi * i / nu;
    for (std::uint32_t j = 0; j < nv; ++j) {
      const double v = 2.0 * std::numbers::pi * j / nv;
      const double r = major_radius + minor_radius * std::cos(v);
      mesh.vertices.emplace_back(r * std::cos(u), minor_radius * std::sin(v), r * std::sin(u));
    }
  }
  for (std::uint32_t i = 0; i < nu; ++i) {
    for (std::uint32_t j = 0; j < nv; ++j) {
      const std::uint32_t a = i * nv + j;
      const std::uint32_t b = ((i + 1) % nu) * nv + j;
      const std::uint32_t c = ((i + 1) % nu) * nv + (j + 1) % nv;
      const std::uint32_t d = i * nv + (j + 1) % nv;
      mesh.faces.push_back({a, b, c});
      mesh.faces.push_back({a, c, d});
    }
  }
  return mesh;
}

TriangleMesh Concatenate(const std::vector<TriangleMesh>& parts) {
  TriangleMesh out;
  bool colored = !parts.empty();
  for (const TriangleMesh& p : parts) colored = colored && p.has_colors();
  for (const TriangleMesh& p : parts) {
    const auto base = static_cast<std::uint32_t>(out.vertices.size());
    out.vertices.insert(out.vertices.end(), p.vertices.begin(), p.vertices.end());
    if (colored) {
      out.vertex_colors.insert(out.vertex_colors.end(), p.vertex_colors.begin(),
                               p.vertex_colors.end());
    }
    for (const Face& f : p.faces) out.faces.push_back({base + f[0], base + f[1], base + f[2]});
  }
  return out;
}

TriangleMesh MakeCornerBracket() {
  const double t = 0.25;
  return Concatenate({
      MakeBox(Vec3(0.0, 0.0, 0.0), Vec3(1.6, t, t)),
      MakeBox(Vec3(0.0, t, 0.0), Vec3(t, 1.1, t)),
      MakeBox(Vec3(0.0, 0.0, t), Vec3(t, t, 0.7)),
      MakeBox(Vec3(1.1, t, 0.0), Vec3(1.35, 0.55, 0.15)),
  });
}

std::vector<std::pair<std::string, TriangleMesh>> BundledFixtures() {
  return {
      {"cone", MakeCone(0.6, 1.4, 48)},
      {"corner", MakeCornerBracket()},
      {"cube", MakeUnitCube()},
      {"cylinder", MakeCylinder(0.5, 1.5, 48)},
      {"icosphere", MakeIcosphere(3)},
  };
}

}  // namespace propforge
