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

#include "propforge/pipeline/anchor.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "propforge/common/error.h"

namespace propforge {

void AnchorTransform::Validate() const {
  for (int a = 0; a < 3; ++a) {
    if (!(per_axis_scale[a] > 0.0) || !std::isfinite(per_axis_scale[a])) {
      Throw(ErrorCode::kInvalidArgument, "anchor scales must be positive and finite");
    }
  }
  if (!translation.allFinite() || !rotation.allFinite()) {
    Throw(ErrorCode::kInvalidArgument, "anchor transform must be finite");
  }
}

AnchorTransform ComputeAnchor(const TriangleMesh& generated, const Aabb& runtime_reference,
                              const AnchorOptions& options) {
  const Aabb box = BoundingBox(generated);
  const Vec3 ref_extent = runtime_reference.extent();
  for (int a = 0; a < 3; ++a) {
    if (!(ref_extent[a] > 0.0) || !std::isfinite(ref_extent[a])) {
      Throw(ErrorCode::kInvalidArgument, "runtime reference box is degenerate on an axis");
    }
  }
  const Vec3 extent = box.extent();
  AnchorTransform anchor;
  for (int a = 0; a < 3; ++a) {
    if (extent[a] > 0.0) {
      anchor.per_axis_scale[a] = ref_extent[a] / extent[a];
    } else {
      anchor.zero_extent_axis[a] = true;
    }
  }
  if (options.uniform_scale) {
    double s = std::numeric_limits<double>::infinity();
    for (int a = 0; a < 3; ++a) {
      if (!anchor.zero_extent_axis[a]) s = std::min(s, anchor.per_axis_scale[a]);
    }
    if (!std::isfinite(s)) s = 1.0;
    anchor.per_axis_scale = Vec3::Constant(s);
  }
  anchor.translation = runtime_reference.center() - box.center();
  return anchor;
}

TriangleMesh ApplyAnchor(const TriangleMesh& mesh, const AnchorTransform& anchor) {
  anchor.Validate();
  const Vec3 pivot = BoundingBox(mesh).center();
  TriangleMesh out = mesh;
  for (Vec3& v : out.vertices) {
    const Vec3 local = anchor.rotation * (v - pivot);
    v = pivot + anchor.per_axis_scale.cwiseProduct(local) + anchor.translation;
  }
  return out;
}

}  // namespace propforge
