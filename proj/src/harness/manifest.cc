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

#include "propforge/harness/manifest.h"

#include <set>

#include <toml.hpp>

#include "propforge/common/error.h"
#include "propforge/common/file_util.h"

namespace propforge {
namespace {

[[noreturn]] void Fail(const std::string& message) { Throw(ErrorCode::kManifestError, message); }

void RejectUnknownKeys(const toml::table& table, const std::set<std::string>& known,
                       const std::string& where) {
  for (const auto& [key, value] : table) {
    if (!known.count(std::string(key.str()))) {
      Fail("unknown key '" + std::string(key.str()) + "' in " + where);
    }
  }
}

template <typename T>
void Read(const toml::table& table, const char* key, T& out, const std::string& where) {
  const toml::node* node = table.get(key);
  if (!node) return;
  if constexpr (std::is_same_v<T, bool>) {
    if (auto v = node->value<bool>()) {
      out = *v;
      return;
    }
  } else if constexpr (std::is_floating_point_v<T>) {
    if (auto v = node->value<double>()) {
      out = *v;
      return;
    }
  } else if constexpr (std::is_integral_v<T>) {
    if (auto v = node->value<std::int64_t>()) {
      if (*v < 0 && std::is_unsigned_v<T>) Fail(std::string(key) + " must be >= 0 in " + where);
      out = static_cast<T>(*v);
      return;
    }
  } else {
    if (auto v = node->value<std::string>()) {
      out = *v;
      return;
    }
  }
  Fail("key '" + std::string(key) + "' in " + where + " has the wrong type");
}

std::filesystem::path Resolve(const std::filesystem::path& base, const std::string& p) {
  if (p.empty()) return {};
  const std::filesystem::path path(p);
  return path.is_absolute() ? path : base / path;
}

const toml::table* SubTable(const toml::table& root, const char* name) {
  const toml::node* node = root.get(name);
  if (!node) return nullptr;
  if (!node->is_table()) Fail(std::string("[") + name + "] must be a table");
  return node->as_table();
}

}  // namespace

void StudyManifest::Validate() const {
  if (prompts.empty()) Fail("manifest needs a prompts file");
  if (!std::filesystem::exists(prompts)) Fail("prompts file not found: " + prompts.string());
  if (objects.empty()) {
    if (dataset_dir.empty()) Fail("manifest needs [[objects]] or a dataset_dir");
    if (!std::filesystem::is_directory(dataset_dir)) {
      Fail("dataset_dir not found: " + dataset_dir.string());
    }
  }
  std::set<std::string> ids;
  for (const StudyObject& o : objects) {
    if (o.id.empty()) Fail("object with empty id");
    if (!ids.insert(o.id).second) Fail("duplicate object id '" + o.id + "'");
    if (!std::filesystem::exists(o.mesh)) Fail("mesh not found for " + o.id + ": " + o.mesh.string());
  }
  if (samples_per_mesh < 3) Fail("samples_per_mesh must be >= 3");
  if (render_width < 1 || render_height < 1) Fail("render size must be >= 1");
  try {
    backend.Validate();
    icp.Validate();
    camera.Validate();
  } catch (const Error& e) {
    Fail(e.what());
  }
}

StudyManifest ParseStudyManifest(std::string_view text, const std::filesystem::path& base_dir) {
  toml::table root;
  try {
    root = toml::parse(text);
  } catch (const toml::parse_error& e) {
    Fail(std::string("TOML: ") + std::string(e.description()));
  }
  RejectUnknownKeys(root,
                    {"dataset_dir", "prompts", "seed", "samples_per_mesh", "threads", "render",
                     "backend", "icp", "objects"},
                    "manifest");

  StudyManifest m;
  std::string dataset_dir;
  std::string prompts;
  Read(root, "dataset_dir", dataset_dir, "manifest");
  Read(root, "prompts", prompts, "manifest");
  m.dataset_dir = Resolve(base_dir, dataset_dir);
  m.prompts = Resolve(base_dir, prompts);
  Read(root, "seed", m.seed, "manifest");
  Read(root, "samples_per_mesh", m.samples_per_mesh, "manifest");
  Read(root, "threads", m.threads, "manifest");

  if (const toml::table* t = SubTable(root, "render")) {
    RejectUnknownKeys(*t,
                      {"width", "height", "elevation", "azimuth", "distance", "projection", "fov",
                       "half_extent", "near_is_bright", "far_value"},
                      "[render]");
    Read(*t, "width", m.render_width, "[render]");
    Read(*t, "height", m.render_height, "[render]");
    Read(*t, "elevation", m.camera.elevation_deg, "[render]");
    Read(*t, "azimuth", m.camera.azimuth_deg, "[render]");
    Read(*t, "distance", m.camera.distance, "[render]");
    std::string projection = "perspective";
    Read(*t, "projection", projection, "[render]");
    if (projection == "perspective") {
      m.camera.projection.kind = ProjectionKind::kPerspective;
    } else if (projection == "orthographic") {
      m.camera.projection.kind = ProjectionKind::kOrthographic;
    } else {
      Fail("projection must be perspective or orthographic");
    }
    Read(*t, "fov", m.camera.projection.fov_deg, "[render]");
    Read(*t, "half_extent", m.camera.projection.half_extent, "[render]");
    Read(*t, "near_is_bright", m.render.near_is_bright, "[render]");
    Read(*t, "far_value", m.render.far_value, "[render]");
  }

  if (const toml::table* t = SubTable(root, "backend")) {
    RejectUnknownKeys(*t,
                      {"t2i", "bg_removal", "img2mesh", "timeout_s", "max_retries",
                       "backoff_base_s", "relief", "pixel_stride", "max_depth_jump",
                       "uniform_scale"},
                      "[backend]");
    Read(*t, "t2i", m.backend.t2i_endpoint, "[backend]");
    Read(*t, "bg_removal", m.backend.bg_removal_endpoint, "[backend]");
    Read(*t, "img2mesh", m.backend.img2mesh_endpoint, "[backend]");
    Read(*t, "timeout_s", m.backend.timeout_s, "[backend]");
    Read(*t, "max_retries", m.backend.max_retries, "[backend]");
    Read(*t, "backoff_base_s", m.backend.backoff_base_s, "[backend]");
    Read(*t, "relief", m.backend.mock.relief, "[backend]");
    Read(*t, "pixel_stride", m.backend.mock.pixel_stride, "[backend]");
    Read(*t, "max_depth_jump", m.backend.mock.max_depth_jump, "[backend]");
    Read(*t, "uniform_scale", m.backend.anchor.uniform_scale, "[backend]");
  }

  if (const toml::table* t = SubTable(root, "icp")) {
    RejectUnknownKeys(*t, {"max_iterations", "convergence_tol", "restarts", "coarse_samples"},
                      "[icp]");
    Read(*t, "max_iterations", m.icp.max_iterations, "[icp]");
    Read(*t, "convergence_tol", m.icp.convergence_tol, "[icp]");
    Read(*t, "restarts", m.icp.restarts, "[icp]");
    Read(*t, "coarse_samples", m.icp.coarse_samples, "[icp]");
  }
  m.icp.seed = m.seed;

  if (const toml::node* node = root.get("objects")) {
    const toml::array* arr = node->as_array();
    if (!arr) Fail("objects must be an array of tables ([[objects]])");
    for (const toml::node& item : *arr) {
      const toml::table* t = item.as_table();
      if (!t) Fail("objects must be an array of tables ([[objects]])");
      RejectUnknownKeys(*t, {"id", "mesh"}, "[[objects]]");
      StudyObject o;
      std::string mesh;
      Read(*t, "id", o.id, "[[objects]]");
      Read(*t, "mesh", mesh, "[[objects]]");
      if (mesh.empty()) Fail("object '" + o.id + "' lacks a mesh path");
      o.mesh = Resolve(base_dir, mesh);
      if (o.id.empty()) o.id = o.mesh.stem().string();
      m.objects.push_back(std::move(o));
    }
  }
  m.Validate();
  return m;
}

StudyManifest LoadStudyManifest(const std::filesystem::path& path) {
  std::string text;
  try {
    text = ReadFileText(path);
  } catch (const Error& e) {
    Fail(std::string("cannot read manifest: ") + e.what());
  }
  return ParseStudyManifest(text, path.parent_path());
}

}  // namespace propforge
