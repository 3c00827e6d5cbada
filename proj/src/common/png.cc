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

#include "propforge/common/png.h"

#include <zlib.h>

#include <algorithm>
#include <array>
#include <cstdlib>
#include <cstring>
#include <string>

#include "propforge/common/error.h"

namespace propforge {
namespace {

constexpr std::array<std::uint8_t, 8> kSignature = {0x89, 'P', 'N', 'G',
                                                    '\r', '\n', 0x1A, '\n'};

void PutU32(Bytes& out, std::uint32_t v) {
  out.push_back(static_cast<std::uint8_t>(v >> 24));
  out.push_back(static_cast<std::uint8_t>(v >> 16));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
  out.push_back(static_cast<std::uint8_t>(v));
}

std::uint32_t GetU32(std::span<const std::uint8_t> data, std::size_t pos) {
  return (std::uint32_t{data[pos]} << 24) | (std::uint32_t{data[pos + 1]} << 16) |
         (std::uint32_t{data[pos + 2]} << 8) | std::uint32_t{data[pos + 3]};
}

void PutChunk(Bytes& out, const char type[4], const Bytes& payload) {
  PutU32(out, static_cast<std::uint32_t>(payload.size()));
  const std::size_t type_pos = out.size();
  out.insert(out.end(), type, type + 4);
  out.insert(out.end(), payload.begin(), payload.end());
  const uLong crc = crc32(0L, out.data() + type_pos, static_cast<uInt>(4 + payload.size()));
  PutU32(out, static_cast<std::uint32_t>(crc));
}

int ColorTypeFor(int channels) {
  switch (channels) {
    case 1: return 0;
    case 2: return 4;
    case 3: return 2;
    case 4: return 6;
  }
  Throw(ErrorCode::kInvalidArgument,
        "unsupported channel count " + std::to_string(channels));
}

int ChannelsFor(int color_type) {
  switch (color_type) {
    case 0: return 1;
    case 4: return 2;
    case 2: return 3;
    case 6: return 4;
  }
  Throw(ErrorCode::kParseError,
        "unsupported PNG color type " + std::to_string(color_type));
}

std::uint8_t Paeth(int a, int b, int c) {
  const int p = a + b - c;
  const int pa = std::abs(p - a);
  const int pb = std::abs(p - b);
  const int pc = std::abs(p - c);
  if (pa <= pb && pa <= pc) return static_cast<std::uint8_t>(a);
  if (pb <= pc) return static_cast<std::uint8_t>(b);
  return static_cast<std::uint8_t>(c);
}

}  // namespace

Bytes EncodePng(const Image8& image) {
  if (image.width <= 0 || image.height <= 0) {
    Throw(ErrorCode::kInvalidArgument, "PNG dimensions must be positive");
  }
  const std::size_t stride = static_cast<std::size_t>(image.width) * image.channels;
  if (image.pixels.size() != stride * image.height) {
    Throw(ErrorCode::kInvalidArgument, "pixel buffer size mismatch");
  }

  Bytes raw;
  raw.reserve((stride + 1) * image.height);
  for (int y = 0; y < image.height; ++y) {
    raw.push_back(0);
    const auto* row = image.pixels.data() + stride * y;
    raw.insert(raw.end(), row, row + stride);
  }
  uLongf packed_size = compressBound(static_cast<uLong>(raw.size()));
  Bytes packed(packed_size);
  if (compress2(packed.data(), &packed_size, raw.data(),
                static_cast<uLong>(raw.size()), 6) != Z_OK) {
    Throw(ErrorCode::kInvalidArgument, "zlib compression failed");
  }
  packed.resize(packed_size);

  Bytes out(kSignature.begin(), kSignature.end());
  Bytes header;
  PutU32(header, static_cast<std::uint32_t>(image.width));
  PutU32(header, static_cast<std::uint32_t>(image.height));
  header.push_back(8);
  header.push_back(static_cast<std::uint8_t>(ColorTypeFor(image.channels)));
  header.push_back(0);
  header.push_back(0);
  header.push_back(0);
  PutChunk(out, "IHDR", header);
  PutChunk(out, "IDAT", packed);
  PutChunk(out, "IEND", {});
  return out;
}

Image8 DecodePng(std::span<const std::uint8_t> data) {
  if (data.size() < kSignature.size() ||
      !std::equal(kSignature.begin(), kSignature.end(), data.begin())) {
    Throw(ErrorCode::kParseError, "not a PNG file");
  }
  Image8 image;
  Bytes idat;
  bool have_header = false;
  bool have_end = false;
  std::size_t pos = kSignature.size();
  while (pos + 12 <= data.size()) {
    const std::uint32_t length = GetU32(data, pos);
    if (pos + 12 + length > data.size()) break;
    const std::string type(reinterpret_cast<const char*>(&data[pos + 4]), 4);
    const auto payload = data.subspan(pos + 8, length);
    const uLong crc = crc32(0L, &data[pos + 4], static_cast<uInt>(4 + length));
    if (crc != GetU32(data, pos + 8 + length)) {
      Throw(ErrorCode::kParseError, "PNG chunk CRC mismatch in " + type);
    }
    if (type == "IHDR") {
      if (length != 13) Throw(ErrorCode::kParseError, "bad IHDR length");
      image.width = static_cast<int>(GetU32(payload, 0));
      image.height = static_cast<int>(GetU32(payload, 4));
      if (payload[8] != 8) Throw(ErrorCode::kParseError, "only 8-bit PNG supported");
      image.channels = ChannelsFor(payload[9]);
      if (payload[12] != 0) Throw(ErrorCode::kParseError, "interlaced PNG not supported");
      have_header = true;
    } else if (type == "IDAT") {
      idat.insert(idat.end(), payload.begin(), payload.end());
    } else if (type == "IEND") {
      have_end = true;
      break;
    }
    pos += 12 + length;
  }
  if (!have_header || !have_end || image.width <= 0 || image.height <= 0) {
    Throw(ErrorCode::kParseError, "truncated PNG");
  }

  const std::size_t stride = static_cast<std::size_t>(image.width) * image.channels;
  Bytes raw((stride + 1) * image.height);
  uLongf raw_size = static_cast<uLongf>(raw.size());
  if (uncompress(raw.data(), &raw_size, idat.data(),
                 static_cast<uLong>(idat.size())) != Z_OK ||
      raw_size != raw.size()) {
    Throw(ErrorCode::kParseError, "corrupt PNG image data");
  }

  image.pixels.assign(stride * image.height, 0);
  const int bpp = image.channels;
  for (int y = 0; y < image.height; ++y) {
    const std::uint8_t filter = raw[(stride + 1) * y];
    const std::uint8_t* src = &raw[(stride + 1) * y + 1];
    std::uint8_t* dst = &image.pixels[stride * y];
    const std::uint8_t* up = y > 0 ? dst - stride : nullptr;
    for (std::size_t i = 0; i < stride; ++i) {
      const int a = i >= static_cast<std::size_t>(bpp) ? dst[i - bpp] : 0;
      const int b = up ? up[i] : 0;
      const int c = (up && i >= static_cast<std::size_t>(bpp)) ? up[i - bpp] : 0;
      int predictor = 0;
      switch (filter) {
        case 0: predictor = 0; break;
        case 1: predictor = a; break;
        case 2: predictor = b; break;
        case 3: predictor = (a + b) / 2; break;
        case 4: predictor = Paeth(a, b, c); break;
        default: Throw(ErrorCode::kParseError, "bad PNG row filter");
      }
      dst[i] = static_cast<std::uint8_t>(src[i] + predictor);
    }
  }
  return image;
}

}  // namespace propforge
