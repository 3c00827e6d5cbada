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

#ifndef PROPFORGE_MESH_FIXTURES_H_
#define PROPFORGE_MESH_FIXTURES_H_

#include <string>
#include <utility>
#include <vector>

#include "propforge/mesh/mesh.h"

namespace propforge {

// Axis-aligned box with 8 shared vertices and 12 outward-wound triangles.
TriangleMesh MakeBox(const Vec3& min, const Vec3& max);
TriangleMesh MakeUnitCube();  // centered at the origin, side 1

// Subdivided icosahedron projected onto a sphere. One vertex sits exactly on
// +z, so a camera on the +z axis sees a vertex at the image center.
TriangleMesh MakeIcosphere(int subdivisions, double radius = 1.0);

// Capped cylinder / cone around +y, base at y = 0.
TriangleMesh MakeCylinder(double radius, double height, int segments);
TriangleMesh MakeCone(double radius, double height, int segments);
TriangleMesh MakeTorus(double major_radius, double minor_radius, int major_segments,
                       int minor_segments);

// Three boxes of unequal length meeting at a corner plus an off-axis knob.
// Has no nontrivial rotational symmetry, which makes alignment well posed.
TriangleMesh MakeCornerBracket();

TriangleMesh Concatenate(const std::vector<TriangleMesh>& parts);

// The bundled fixture set used by tests, the CLI and the sample study.
std::vector<std::pair<std::string, TriangleMesh>> BundledFixtures();

}  // namespace propforge

#endif  // PROPFORGE_MESH_FIXTURES_H_
