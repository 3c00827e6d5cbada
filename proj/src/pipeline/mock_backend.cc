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

#include "propforge/pipeline/mock_backend.h"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <unordered_map>

#include "propforge/common/error.h"
#include "propforge/common/random.h"
#include "propforge/mesh/mesh_io.h"

namespace propforge {
namespace mock {
namespace {

Image8 DecodeOrReject(const Bytes& png, std::string_view what) {
  try {
    return DecodePng(png);
  } catch (const Error& e) {
    Throw(ErrorCode::kInvalidArtifact, std::string(what) + " is not a valid PNG: " + e.what());
  }
}

bool HasAlpha(const Image8& image) { return image.channels == 2 || image.channels == 4; }

}  // namespace

std::array<std::uint8_t, 3> PromptColor(const std::string& prompt, std::uint64_t seed) {
  const std::uint64_t h = MixSeed(Fnv1a64(prompt) ^ MixSeed(seed));
  std::array<std::uint8_t, 3> color{};
  for (int c = 0; c < 3; ++c) {
    color[c] = static_cast<std::uint8_t>(64 + ((h >> (16 * c)) & 0xffff) % 192);
  }
  return color;
}

Bytes TextToImage(const std::string& prompt, const Bytes& depth_png, std::uint64_t seed) {
  const Image8 depth = DecodeOrReject(depth_png, "depth input");
  const std::array<std::uint8_t, 3> color = PromptColor(prompt, seed);
  Image8 out;
  out.width = depth.width;
  out.height = depth.height;
  out.channels = 3;
  out.pixels.assign(static_cast<std::size_t>(out.width) * out.height * 3, 0);
  for (int y = 0; y < depth.height; ++y) {
    for (int x = 0; x < depth.width; ++x) {
      const std::uint8_t d = depth.at(x, y, 0);
      if (d == 0) continue;
      std::uint8_t* px = &out.pixels[(static_cast<std::size_t>(y) * out.width + x) * 3];
      px[0] = d;
      px[1] = color[1];
      px[2] = color[2];
    }
  }
  return EncodePng(out);
}

namespace {

Bytes WithAlpha(const Image8& image, const std::vector<bool>& foreground) {
  Image8 out;
  out.width = image.width;
  out.height = image.height;
  out.channels = 4;
  out.pixels.assign(static_cast<std::size_t>(out.width) * out.height * 4, 0);
  const int color_channels = HasAlpha(image) ? image.channels - 1 : image.channels;
  for (int y = 0; y < image.height; ++y) {
    for (int x = 0; x < image.width; ++x) {
      const std::size_t i = static_cast<std::size_t>(y) * image.width + x;
      std::uint8_t* px = &out.pixels[i * 4];
      for (int c = 0; c < 3; ++c) px[c] = image.at(x, y, std::min(c, color_channels - 1));
      px[3] = foreground[i] ? 255 : 0;
    }
  }
  return EncodePng(out);
}

}  // namespace

Bytes RemoveBackground(const Bytes& image_png) {
  const Image8 image = DecodeOrReject(image_png, "background removal input");
  const int color_channels = HasAlpha(image) ? image.channels - 1 : image.channels;
  std::vector<bool> fg(static_cast<std::size_t>(image.width) * image.height, false);
  for (int y = 0; y < image.height; ++y) {
    for (int x = 0; x < image.width; ++x) {
      bool any = false;
      for (int c = 0; c < color_channels; ++c) any = any || image.at(x, y, c) > 0;
      if (HasAlpha(image)) any = any && image.at(x, y, image.channels - 1) > 0;
      fg[static_cast<std::size_t>(y) * image.width + x] = any;
    }
  }
  return WithAlpha(image, fg);
}

Bytes RemoveBackgroundWithDepth(const Bytes& image_png, const Bytes& depth_png) {
  if (depth_png.empty()) return RemoveBackground(image_png);
  const Image8 image = DecodeOrReject(image_png, "background removal input");
  const Image8 depth = DecodeOrReject(depth_png, "depth map");
  if (depth.width != image.width || depth.height != image.height) {
    Throw(ErrorCode::kInvalidArtifact, "depth map and image differ in size");
  }
  std::vector<bool> fg(static_cast<std::size_t>(image.width) * image.height, false);
  for (int y = 0; y < image.height; ++y) {
    for (int x = 0; x < image.width; ++x) {
      fg[static_cast<std::size_t>(y) * image.width + x] = depth.at(x, y, 0) > 0;
    }
  }
  return WithAlpha(image, fg);
}

TriangleMesh ReconstructHeightfield(const Image8& image, const MockOptions& options) {
  if (options.pixel_stride < 1) Throw(ErrorCode::kInvalidArgument, "pixel_stride must be >= 1");
  if (!(options.relief > 0.0)) Throw(ErrorCode::kInvalidArgument, "relief must be positive");
  const int s = options.pixel_stride;
  const int gw = (image.width - 1) / s + 1;
  const int gh = (image.height - 1) / s + 1;
  const double span = std::max(image.width, image.height);
  const bool alpha = HasAlpha(image);

  auto depth_at = [&](int gx, int gy) -> double {
    const int x = gx * s;
    const int y = gy * s;
    if (alpha && image.at(x, y, image.channels - 1) == 0) return 0.0;
    return image.at(x, y, 0) / 255.0;
  };

  bool any_foreground = false;
  for (int y = 0; y < image.height && !any_foreground; ++y) {
    for (int x = 0; x < image.width; ++x) {
      if (image.at(x, y, 0) > 0 && (!alpha || image.at(x, y, image.channels - 1) > 0)) {
        any_foreground = true;
        break;
      }
    }
  }
  if (!any_foreground) Throw(ErrorCode::kEmptyForeground, "image has no foreground pixels");

  TriangleMesh mesh;
  std::unordered_map<int, std::uint32_t> vertex_of;
  auto vertex = [&](int gx, int gy) -> std::uint32_t {
    const int key = gy * gw + gx;
    const auto it = vertex_of.find(key);
    if (it != vertex_of.end()) return it->second;
    const int x = gx * s;
    const int y = gy * s;
    const double px = ((x + 0.5) * 2.0 - image.width) / span;
    const double py = (image.height - (y + 0.5) * 2.0) / span;
    const std::uint32_t idx = static_cast<std::uint32_t>(mesh.vertices.size());
    mesh.vertices.emplace_back(px, py, depth_at(gx, gy) * options.relief);
    if (image.channels >= 3) {
      mesh.vertex_colors.emplace_back(image.at(x, y, 1) / 255.0, image.at(x, y, 2) / 255.0, 0.5);
    } else {
      mesh.vertex_colors.emplace_back(0.5, 0.5, 0.5);
    }
    vertex_of.emplace(key, idx);
    return idx;
  };

  for (int gy = 0; gy + 1 < gh; ++gy) {
    for (int gx = 0; gx + 1 < gw; ++gx) {
      const double d[4] = {depth_at(gx, gy), depth_at(gx + 1, gy), depth_at(gx, gy + 1),
                           depth_at(gx + 1, gy + 1)};
      if (*std::min_element(d, d + 4) <= 0.0) continue;
      if (*std::max_element(d, d + 4) - *std::min_element(d, d + 4) > options.max_depth_jump) {
        continue;
      }
      const std::uint32_t v00 = vertex(gx, gy);
      const std::uint32_t v10 = vertex(gx + 1, gy);
      const std::uint32_t v01 = vertex(gx, gy + 1);
      const std::uint32_t v11 = vertex(gx + 1, gy + 1);
      mesh.faces.push_back({v00, v01, v11});
      mesh.faces.push_back({v00, v11, v10});
    }
  }
  if (mesh.faces.empty()) {
    Throw(ErrorCode::kInvalidArtifact, "foreground too small to reconstruct at this stride");
  }
  return mesh;
}

Bytes ImageToMesh(const Bytes& image_png, const MockOptions& options) {
  const Image8 image = DecodeOrReject(image_png, "reconstruction input");
  return WriteGlb(ReconstructHeightfield(image, options));
}

}  // namespace mock

std::string MockBackend::StageBackendId(Stage stage) const {
  switch (stage) {
    case Stage::kTextToImage:
      return "mock-v1/t2i";
    case Stage::kBackgroundRemoval:
      return "mock-v1/bg";
    case Stage::kImageToMesh: {
      std::ostringstream id;
      id.precision(17);
      id << "mock-v1/img2mesh?relief=" << options_.relief << "&stride=" << options_.pixel_stride
         << "&jump=" << options_.max_depth_jump;
      return id.str();
    }
    case Stage::kAnchoring:
      return "local";
  }
  return "mock-v1";
}

Bytes MockBackend::TextToImage(const std::string& prompt, const Bytes& depth_png,
                               std::uint64_t seed) {
  return mock::TextToImage(prompt, depth_png, seed);
}

Bytes MockBackend::RemoveBackground(const Bytes& image_png, const Bytes& /*depth_png*/) {
  return mock::RemoveBackground(image_png);
}

Bytes MockBackend::ImageToMesh(const Bytes& image_png) {
  return mock::ImageToMesh(image_png, options_);
}

TriangleMesh MockGenerateMesh(const DepthImage& depth, const PromptSpec& prompt,
                              std::uint64_t seed, const MockOptions& options) {
  const Bytes depth_png = EncodeDepthPng(depth);
  MockBackend backend(options);
  const Bytes image = backend.TextToImage(prompt.text, depth_png, seed);
  const Bytes cutout = backend.RemoveBackground(image, depth_png);
  return ParseGlb(backend.ImageToMesh(cutout));
}

}  // namespace propforge
