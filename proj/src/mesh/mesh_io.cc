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

#include "propforge/mesh/mesh_io.h"

#include <algorithm>
#include <charconv>
#include <cstring>
#include <sstream>

#include "json.hpp"
#include "propforge/common/error.h"
#include "propforge/common/file_util.h"

namespace propforge {
namespace {

using nlohmann::json;

constexpr std::uint32_t kGlbMagic = 0x46546C67;  // "glTF"
constexpr std::uint32_t kChunkJson = 0x4E4F534A;
constexpr std::uint32_t kChunkBin = 0x004E4942;

// Splits on ASCII whitespace.
std::vector<std::string_view> Tokenize(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    const std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i > start) tokens.push_back(line.substr(start, i - start));
  }
  return tokens;
}

double ParseDouble(std::string_view token, int line) {
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    Throw(ErrorCode::kParseError, "line " + std::to_string(line) +
                                      ": bad number '" + std::string(token) + "'");
  }
  return value;
}

long ParseIndex(std::string_view token, int line) {
  long value = 0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    Throw(ErrorCode::kParseError, "line " + std::to_string(line) +
                                      ": bad face index '" + std::string(token) + "'");
  }
  return value;
}

std::uint32_t ReadU32(std::span<const std::uint8_t> data, std::size_t pos) {
  return std::uint32_t{data[pos]} | (std::uint32_t{data[pos + 1]} << 8) |
         (std::uint32_t{data[pos + 2]} << 16) | (std::uint32_t{data[pos + 3]} << 24);
}

void AppendU32(Bytes& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

template <typename T>
void AppendRaw(Bytes& out, T value) {
  std::uint8_t buf[sizeof(T)];
  std::memcpy(buf, &value, sizeof(T));
  out.insert(out.end(), buf, buf + sizeof(T));
}

int ComponentCount(const std::string& type) {
  if (type == "SCALAR") return 1;
  if (type == "VEC2") return 2;
  if (type == "VEC3") return 3;
  if (type == "VEC4") return 4;
  Throw(ErrorCode::kParseError, "unsupported accessor type " + type);
}

int ComponentSize(int component_type) {
  switch (component_type) {
    case 5120: case 5121: return 1;
    case 5122: case 5123: return 2;
    case 5125: case 5126: return 4;
  }
  Throw(ErrorCode::kParseError,
        "unsupported component type " + std::to_string(component_type));
}

// Typed view over one accessor inside the BIN chunk.
class AccessorView {
 public:
  AccessorView(const json& doc, std::span<const std::uint8_t> bin, int index) {
    const json& accessors = doc.at("accessors");
    if (index < 0 || index >= static_cast<int>(accessors.size())) {
      Throw(ErrorCode::kParseError, "accessor index out of range");
    }
    const json& acc = accessors[index];
    count_ = acc.at("count").get<std::size_t>();
    component_type_ = acc.at("componentType").get<int>();
    components_ = ComponentCount(acc.at("type").get<std::string>());
    normalized_ = acc.value("normalized", false);
    const std::size_t element_size = ComponentSize(component_type_) * components_;
    if (!acc.contains("bufferView")) {
      Throw(ErrorCode::kParseError, "sparse or bufferless accessors are not supported");
    }
    const json& view = doc.at("bufferViews").at(acc.at("bufferView").get<std::size_t>());
    if (view.value("buffer", 0) != 0) {
      Throw(ErrorCode::kParseError, "only the embedded GLB buffer is supported");
    }
    stride_ = view.value("byteStride", element_size);
    offset_ = view.value("byteOffset", std::size_t{0}) + acc.value("byteOffset", std::size_t{0});
    const std::size_t view_end =
        view.value("byteOffset", std::size_t{0}) + view.at("byteLength").get<std::size_t>();
    if (count_ > 0 &&
        (offset_ + stride_ * (count_ - 1) + element_size > view_end || view_end > bin.size())) {
      Throw(ErrorCode::kParseError, "accessor runs past the end of its buffer");
    }
    bin_ = bin;
  }

  std::size_t count() const { return count_; }
  int components() const { return components_; }

  double Get(std::size_t element, int component) const {
    const std::size_t pos = offset_ + stride_ * element +
                            static_cast<std::size_t>(component) * ComponentSize(component_type_);
    const std::uint8_t* p = bin_.data() + pos;
    switch (component_type_) {
      case 5126: {
        float v;
        std::memcpy(&v, p, 4);
        return v;
      }
      case 5121: return normalized_ ? p[0] / 255.0 : p[0];
      case 5120: {
        const auto v = static_cast<std::int8_t>(p[0]);
        return normalized_ ? std::max(v / 127.0, -1.0) : v;
      }
      case 5123: {
        std::uint16_t v;
        std::memcpy(&v, p, 2);
        return normalized_ ? v / 65535.0 : v;
      }
      case 5122: {
        std::int16_t v;
        std::memcpy(&v, p, 2);
        return normalized_ ? std::max(v / 32767.0, -1.0) : v;
      }
      case 5125: {
        std::uint32_t v;
        std::memcpy(&v, p, 4);
        return v;
      }
    }
    return 0.0;
  }

 private:
  std::span<const std::uint8_t> bin_;
  std::size_t count_ = 0;
  std::size_t stride_ = 0;
  std::size_t offset_ = 0;
  int component_type_ = 5126;
  int components_ = 1;
  bool normalized_ = false;
};

}  // namespace

MeshFormat MeshFormatFromPath(const std::filesystem::path& path) {
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (ext == ".obj") return MeshFormat::kObj;
  if (ext == ".glb") return MeshFormat::kGlb;
  Throw(ErrorCode::kParseError, "unrecognized mesh extension: " + path.string());
}

TriangleMesh ParseObj(std::string_view text) {
  TriangleMesh mesh;
  std::vector<Vec3> colors;
  bool all_colored = true;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    const auto tokens = Tokenize(line);
    if (tokens.empty()) continue;

    if (tokens[0] == "v") {
      if (tokens.size() < 4) {
        Throw(ErrorCode::kParseError,
              "line " + std::to_string(line_no) + ": vertex needs 3 coordinates");
      }
      mesh.vertices.emplace_back(ParseDouble(tokens[1], line_no),
                                 ParseDouble(tokens[2], line_no),
                                 ParseDouble(tokens[3], line_no));
      if (tokens.size() >= 7) {
        Vec3 rgb(ParseDouble(tokens[4], line_no), ParseDouble(tokens[5], line_no),
                 ParseDouble(tokens[6], line_no));
        colors.push_back(rgb.cwiseMax(0.0).cwiseMin(1.0));
      } else {
        all_colored = false;
      }
    } else if (tokens[0] == "f") {
      if (tokens.size() < 4) {
        Throw(ErrorCode::kParseError,
              "line " + std::to_string(line_no) + ": face needs at least 3 vertices");
      }
      std::vector<std::uint32_t> polygon;
      for (std::size_t t = 1; t < tokens.size(); ++t) {
        const std::string_view head = tokens[t].substr(0, tokens[t].find('/'));
        long idx = ParseIndex(head, line_no);
        const long n = static_cast<long>(mesh.vertices.size());
        if (idx < 0) idx = n + idx + 1;
        if (idx < 1 || idx > n) {
          Throw(ErrorCode::kIndexOutOfRange,
                "line " + std::to_string(line_no) + ": vertex index " +
                    std::string(head) + " outside 1.." + std::to_string(n));
        }
        polygon.push_back(static_cast<std::uint32_t>(idx - 1));
      }
      for (std::size_t k = 1; k + 1 < polygon.size(); ++k) {
        mesh.faces.push_back({polygon[0], polygon[k], polygon[k + 1]});
      }
    }
  }
  if (all_colored && !mesh.vertices.empty()) mesh.vertex_colors = std::move(colors);
  return mesh;
}

TriangleMesh ParseGlb(std::span<const std::uint8_t> data) {
  if (data.size() < 20 || ReadU32(data, 0) != kGlbMagic) {
    Throw(ErrorCode::kParseError, "not a binary glTF file");
  }
  if (ReadU32(data, 4) != 2) Throw(ErrorCode::kParseError, "unsupported glTF version");
  const std::size_t total = std::min<std::size_t>(ReadU32(data, 8), data.size());

  json doc;
  std::span<const std::uint8_t> bin;
  std::size_t pos = 12;
  while (pos + 8 <= total) {
    const std::uint32_t length = ReadU32(data, pos);
    const std::uint32_t type = ReadU32(data, pos + 4);
    if (pos + 8 + length > total) Throw(ErrorCode::kParseError, "truncated GLB chunk");
    const auto chunk = data.subspan(pos + 8, length);
    if (type == kChunkJson) {
      doc = json::parse(chunk.begin(), chunk.end(), nullptr, false);
      if (doc.is_discarded()) Throw(ErrorCode::kParseError, "malformed GLB JSON chunk");
    } else if (type == kChunkBin && bin.empty()) {
      bin = chunk;
    }
    pos += 8 + ((length + 3u) & ~3u);
  }
  if (!doc.is_object()) Throw(ErrorCode::kParseError, "GLB has no JSON chunk");

  TriangleMesh mesh;
  try {
    if (!doc.contains("meshes") || doc["meshes"].empty()) {
      Throw(ErrorCode::kEmptyMesh, "glTF document has no meshes");
    }
    bool any_colors = false;
    bool all_colors = true;
    std::vector<Vec3> colors;
    for (const json& prim : doc["meshes"][0].at("primitives")) {
      if (prim.value("mode", 4) != 4) continue;
      const json& attrs = prim.at("attributes");
      const AccessorView positions(doc, bin, attrs.at("POSITION").get<int>());
      if (positions.components() != 3) Throw(ErrorCode::kParseError, "POSITION must be VEC3");
      const auto base = static_cast<std::uint32_t>(mesh.vertices.size());
      for (std::size_t i = 0; i < positions.count(); ++i) {
        mesh.vertices.emplace_back(positions.Get(i, 0), positions.Get(i, 1), positions.Get(i, 2));
      }
      if (attrs.contains("COLOR_0")) {
        any_colors = true;
        const AccessorView color(doc, bin, attrs["COLOR_0"].get<int>());
        if (color.count() != positions.count() || color.components() < 3) {
          Throw(ErrorCode::kParseError, "COLOR_0 does not match POSITION");
        }
        for (std::size_t i = 0; i < color.count(); ++i) {
          colors.emplace_back(color.Get(i, 0), color.Get(i, 1), color.Get(i, 2));
        }
      } else {
        all_colors = false;
      }
      if (prim.contains("indices")) {
        const AccessorView indices(doc, bin, prim["indices"].get<int>());
        if (indices.count() % 3 != 0) {
          Throw(ErrorCode::kParseError, "index count is not a multiple of 3");
        }
        for (std::size_t i = 0; i < indices.count(); i += 3) {
          Face f;
          for (int k = 0; k < 3; ++k) {
            const double idx = indices.Get(i + k, 0);
            if (idx >= static_cast<double>(positions.count())) {
              Throw(ErrorCode::kIndexOutOfRange, "glTF index past the vertex count");
            }
            f[k] = base + static_cast<std::uint32_t>(idx);
          }
          mesh.faces.push_back(f);
        }
      } else {
        if (positions.count() % 3 != 0) {
          Throw(ErrorCode::kParseError, "non-indexed vertex count is not a multiple of 3");
        }
        for (std::uint32_t i = 0; i < positions.count(); i += 3) {
          mesh.faces.push_back({base + i, base + i + 1, base + i + 2});
        }
      }
    }
    if (any_colors && all_colors) mesh.vertex_colors = std::move(colors);
  } catch (const json::exception& e) {
    Throw(ErrorCode::kParseError, std::string("glTF structure: ") + e.what());
  }
  return mesh;
}

std::string WriteObj(const TriangleMesh& mesh) {
  std::ostringstream out;
  out.precision(17);
  for (std::size_t i = 0; i < mesh.vertices.size(); ++i) {
    const Vec3& v = mesh.vertices[i];
    out << "v " << v.x() << ' ' << v.y() << ' ' << v.z();
    if (mesh.has_colors()) {
      const Vec3& c = mesh.vertex_colors[i];
      out << ' ' << c.x() << ' ' << c.y() << ' ' << c.z();
    }
    out << '\n';
  }
  for (const Face& f : mesh.faces) {
    out << "f " << f[0] + 1 << ' ' << f[1] + 1 << ' ' << f[2] + 1 << '\n';
  }
  return out.str();
}

Bytes WriteGlb(const TriangleMesh& mesh) {
  Bytes bin;
  const std::size_t position_offset = 0;
  Vec3 lo = Vec3::Constant(0.0);
  Vec3 hi = Vec3::Constant(0.0);
  for (std::size_t i = 0; i < mesh.vertices.size(); ++i) {
    Vec3 rounded;
    for (int k = 0; k < 3; ++k) {
      const float f = static_cast<float>(mesh.vertices[i][k]);
      AppendRaw(bin, f);
      rounded[k] = f;
    }
    lo = i == 0 ? rounded : lo.cwiseMin(rounded);
    hi = i == 0 ? rounded : hi.cwiseMax(rounded);
  }
  const std::size_t position_length = bin.size() - position_offset;
  const std::size_t index_offset = bin.size();
  for (const Face& f : mesh.faces) {
    for (std::uint32_t idx : f) AppendRaw(bin, idx);
  }
  const std::size_t index_length = bin.size() - index_offset;
  const std::size_t color_offset = bin.size();
  for (const Vec3& c : mesh.vertex_colors) {
    for (int k = 0; k < 3; ++k) AppendRaw(bin, static_cast<float>(c[k]));
  }
  const std::size_t color_length = bin.size() - color_offset;
  while (bin.size() % 4) bin.push_back(0);

  json doc;
  doc["asset"] = {{"version", "2.0"}, {"generator", "propforge"}};
  doc["scene"] = 0;
  doc["scenes"] = json::array({{{"nodes", {0}}}});
  doc["nodes"] = json::array({{{"mesh", 0}}});
  json attributes = {{"POSITION", 0}};
  json buffer_views = json::array();
  json accessors = json::array();
  buffer_views.push_back({{"buffer", 0},
                          {"byteOffset", position_offset},
                          {"byteLength", position_length},
                          {"target", 34962}});
  accessors.push_back({{"bufferView", 0},
                       {"componentType", 5126},
                       {"count", mesh.vertices.size()},
                       {"type", "VEC3"},
                       {"min", {lo.x(), lo.y(), lo.z()}},
                       {"max", {hi.x(), hi.y(), hi.z()}}});
  buffer_views.push_back({{"buffer", 0},
                          {"byteOffset", index_offset},
                          {"byteLength", index_length},
                          {"target", 34963}});
  accessors.push_back({{"bufferView", 1},
                       {"componentType", 5125},
                       {"count", mesh.faces.size() * 3},
                       {"type", "SCALAR"}});
  if (mesh.has_colors()) {
    buffer_views.push_back({{"buffer", 0},
                            {"byteOffset", color_offset},
                            {"byteLength", color_length},
                            {"target", 34962}});
    accessors.push_back({{"bufferView", 2},
                         {"componentType", 5126},
                         {"count", mesh.vertex_colors.size()},
                         {"type", "VEC3"}});
    attributes["COLOR_0"] = 2;
  }
  doc["meshes"] = json::array(
      {{{"primitives", json::array({{{"attributes", attributes}, {"indices", 1}, {"mode", 4}}})}}});
  doc["bufferViews"] = buffer_views;
  doc["accessors"] = accessors;
  doc["buffers"] = json::array({{{"byteLength", bin.size()}}});

  std::string text = doc.dump();
  while (text.size() % 4) text.push_back(' ');

  Bytes out;
  AppendU32(out, kGlbMagic);
  AppendU32(out, 2);
  AppendU32(out, static_cast<std::uint32_t>(12 + 8 + text.size() + 8 + bin.size()));
  AppendU32(out, static_cast<std::uint32_t>(text.size()));
  AppendU32(out, kChunkJson);
  out.insert(out.end(), text.begin(), text.end());
  AppendU32(out, static_cast<std::uint32_t>(bin.size()));
  AppendU32(out, kChunkBin);
  out.insert(out.end(), bin.begin(), bin.end());
  return out;
}

TriangleMesh LoadMesh(const std::filesystem::path& path, MeshFormat format) {
  Bytes data;
  try {
    data = ReadFileBytes(path);
  } catch (const Error& e) {
    Throw(ErrorCode::kParseError, e.what());
  }
  TriangleMesh mesh;
  if (format == MeshFormat::kObj) {
    mesh = ParseObj(std::string_view(reinterpret_cast<const char*>(data.data()), data.size()));
  } else {
    mesh = ParseGlb(data);
  }
  if (mesh.faces.empty()) Throw(ErrorCode::kEmptyMesh, path.string() + " has no faces");
  ValidateMesh(mesh, /*require_area=*/true);
  return mesh;
}

TriangleMesh LoadMesh(const std::filesystem::path& path) {
  return LoadMesh(path, MeshFormatFromPath(path));
}

void SaveMesh(const std::filesystem::path& path, const TriangleMesh& mesh) {
  if (MeshFormatFromPath(path) == MeshFormat::kObj) {
    WriteFileAtomic(path, WriteObj(mesh));
  } else {
    WriteFileAtomic(path, WriteGlb(mesh));
  }
}

}  // namespace propforge
