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

#ifndef PROPFORGE_REGISTRATION_KDTREE_H_
#define PROPFORGE_REGISTRATION_KDTREE_H_

#include <cstdint>
#include <vector>

#include "propforge/mesh/mesh.h"

namespace propforge {

// (ax-bx)^2 + (ay-by)^2 + (az-bz)^2, evaluated in exactly this order. The
// tree and every brute-force comparison use this expression so results agree
// bit for bit.
inline double SquaredDistance(const Vec3& a, const Vec3& b) {
  const double dx = a.x() - b.x();
  const double dy = a.y() - b.y();
  const double dz = a.z() - b.z();
  return dx * dx + dy * dy + dz * dz;
}

struct Neighbor {
  std::uint32_t index = 0;
  double squared_distance = 0.0;
};

// Exact 3-D k-d tree for nearest-neighbor queries. Immutable after
// construction; Nearest() is safe to call from several threads.
class KdTree {
 public:
  explicit KdTree(std::vector<Vec3> points, std::size_t leaf_size = 8);

  // Exact nearest point. Ties go to the lowest point index.
  Neighbor Nearest(const Vec3& query) const;

  std::size_t size() const { return points_.size(); }
  const std::vector<Vec3>& points() const { return points_; }

 private:
  struct Node {
    // Leaf when axis < 0: items [begin, end) of order_.
    int axis = -1;
    double split = 0.0;
    std::uint32_t begin = 0;
    std::uint32_t end = 0;
    std::uint32_t left = 0;
    std::uint32_t right = 0;
  };

  std::uint32_t Build(std::uint32_t begin, std::uint32_t end);
  void Search(std::uint32_t node, const Vec3& query, Neighbor& best) const;

  std::vector<Vec3> points_;
  std::vector<std::uint32_t> order_;
  std::vector<Node> nodes_;
  std::size_t leaf_size_;
};

}  // namespace propforge

#endif  // PROPFORGE_REGISTRATION_KDTREE_H_
