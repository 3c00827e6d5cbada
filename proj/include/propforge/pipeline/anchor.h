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

#ifndef PROPFORGE_PIPELINE_ANCHOR_H_
#define PROPFORGE_PIPELINE_ANCHOR_H_

#include <array>

#include <Eigen/Core>

#include "propforge/mesh/mesh.h"

namespace propforge {

struct AnchorOptions {
  // Use the smallest per-axis ratio on every axis, preserving proportions.
  bool uniform_scale = false;
};

// Maps a generated mesh onto a runtime reference box: scale about the
// generated box center, then translate that center onto the reference
// center. Rotation stays identity unless a caller refines it.
struct AnchorTransform {
  Vec3 per_axis_scale = Vec3::Ones();
  Vec3 translation = Vec3::Zero();
  Eigen::Matrix3d rotation = Eigen::Matrix3d::Identity();
  // Axes on which the generated mesh was flat; their scale was left at 1.
  std::array<bool, 3> zero_extent_axis{};

  bool any_zero_extent() const {
    return zero_extent_axis[0] || zero_extent_axis[1] || zero_extent_axis[2];
  }
  void Validate() const;
};

// Throws InvalidArgument when the reference box is degenerate on any axis.
AnchorTransform ComputeAnchor(const TriangleMesh& generated, const Aabb& runtime_reference,
                              const AnchorOptions& options = {});

TriangleMesh ApplyAnchor(const TriangleMesh& mesh, const AnchorTransform& anchor);

}  // namespace propforge

#endif  // PROPFORGE_PIPELINE_ANCHOR_H_
