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

#ifndef PROPFORGE_COMMON_PNG_H_
#define PROPFORGE_COMMON_PNG_H_

#include <cstdint>
#include <span>
#include <vector>

#include "propforge/common/hash.h"

namespace propforge {

// 8-bit interleaved raster. channels: 1 gray, 2 gray+alpha, 3 RGB, 4 RGBA.
struct Image8 {
  int width = 0;
  int height = 0;
  int channels = 1;
  std::vector<std::uint8_t> pixels;

  std::uint8_t at(int x, int y, int c) const {
    return pixels[(static_cast<std::size_t>(y) * width + x) * channels + c];
  }
  std::uint8_t& at(int x, int y, int c) {
    return pixels[(static_cast<std::size_t>(y) * width + x) * channels + c];
  }
};

// Non-interlaced 8-bit PNG, filter type 0 on every row. Output is a pure
// function of the image.
Bytes EncodePng(const Image8& image);

// Accepts 8-bit gray, gray+alpha, RGB and RGBA PNGs with any row filter.
// Throws Error(kParseError) on anything else.
Image8 DecodePng(std::span<const std::uint8_t> data);

}  // namespace propforge

#endif  // PROPFORGE_COMMON_PNG_H_
