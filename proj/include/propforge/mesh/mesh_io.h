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

#ifndef PROPFORGE_MESH_MESH_IO_H_
#define PROPFORGE_MESH_MESH_IO_H_

#include <filesystem>
#include <span>
#include <string>
#include <string_view>

#include "propforge/common/hash.h"
#include "propforge/mesh/mesh.h"

namespace propforge {

enum class MeshFormat { kObj, kGlb };

// From the file extension (.obj / .glb, case-insensitive).
MeshFormat MeshFormatFromPath(const std::filesystem::path& path);

// OBJ: `v x y z [r g b]` and `f` records (any of i, i/t, i//n, i/t/n, with
// negative relative indices); polygons are fan-triangulated. Everything else
// is ignored. Colors are kept only when every vertex carries them.
TriangleMesh ParseObj(std::string_view text);

// glTF 2.0 binary container. Reads every triangle primitive of the first
// mesh (POSITION, optional indices, optional COLOR_0). Node transforms,
// materials and textures are ignored.
TriangleMesh ParseGlb(std::span<const std::uint8_t> data);

std::string WriteObj(const TriangleMesh& mesh);
Bytes WriteGlb(const TriangleMesh& mesh);

// Loaders validate the result (at least one nonzero-area face).
TriangleMesh LoadMesh(const std::filesystem::path& path, MeshFormat format);
TriangleMesh LoadMesh(const std::filesystem::path& path);
void SaveMesh(const std::filesystem::path& path, const TriangleMesh& mesh);

}  // namespace propforge

#endif  // PROPFORGE_MESH_MESH_IO_H_
