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

#ifndef PROPFORGE_COMMON_HASH_H_
#define PROPFORGE_COMMON_HASH_H_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace propforge {

using Bytes = std::vector<std::uint8_t>;

// Lowercase hex SHA-256 digest.
std::string Sha256Hex(std::span<const std::uint8_t> data);
std::string Sha256Hex(std::string_view data);

// Incremental hasher used to derive content addresses from several inputs.
// Each field is length-prefixed so ("ab","c") and ("a","bc") differ.
class ContentHasher {
 public:
  ContentHasher();
  ~ContentHasher();
  ContentHasher(const ContentHasher&) = delete;
  ContentHasher& operator=(const ContentHasher&) = delete;

  ContentHasher& Add(std::string_view field);
  ContentHasher& Add(std::span<const std::uint8_t> field);
  ContentHasher& Add(std::uint64_t value);

  std::string HexDigest();

 private:
  void Update(const void* data, std::size_t size);

  void* ctx_;
};

// 64-bit FNV-1a; used for cheap stable derivations (e.g. prompt colors).
std::uint64_t Fnv1a64(std::string_view data);

}  // namespace propforge

#endif  // PROPFORGE_COMMON_HASH_H_
