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

#ifndef PROPFORGE_REGISTRATION_REGISTRATION_H_
#define PROPFORGE_REGISTRATION_REGISTRATION_H_

#include <cstdint>
#include <vector>

#include <Eigen/Core>

#include "propforge/mesh/mesh.h"

namespace propforge {

// x -> rotation * x + translation. rotation is a proper rotation matrix.
struct RigidTransform {
  Eigen::Matrix3d rotation = Eigen::Matrix3d::Identity();
  Vec3 translation = Vec3::Zero();

  static RigidTransform Identity() { return {}; }

  Vec3 Apply(const Vec3& p) const { return rotation * p + translation; }
  std::vector<Vec3> Apply(const std::vector<Vec3>& points) const;
  // (this * other)(x) = this(other(x))
  RigidTransform Compose(const RigidTransform& other) const;
  RigidTransform Inverse() const;
};

// True when R^T R = I and det R = +1, both within tol.
bool IsProperRotation(const Eigen::Matrix3d& rotation, double tol = 1e-9);

struct IcpParams {
  int max_iterations = 100;
  double convergence_tol = 1e-7;
  int restarts = 24;
  std::uint64_t seed = 0;
  // Restarts run on an evenly strided subset of coarse_samples points per
  // cloud before the winner is refined on the full clouds (only in
  // RobustAlignRefined).
  // 0 disables the coarse stage.
  std::size_t coarse_samples = 1000;

  void Validate() const;
};

struct AlignmentResult {
  RigidTransform transform;   // maps source into the target frame
  double rms = 0.0;           // RMS nearest-neighbor distance after alignment
  int restart_index = 0;      // 0 is the identity start
  int iterations_used = 0;    // accepted Kabsch updates
  std::vector<double> rms_history;  // RMS before the first and after each update
};

// Uniform rotation on SO(3): four standard normals normalized to a unit
// quaternion. Translation is zero.
RigidTransform RandomRotation(std::uint64_t seed);

struct KabschResult {
  RigidTransform transform;
  // Set when the cross-covariance has rank < 2, so the rotation about the
  // remaining axis is unresolved. The transform is still a best effort.
  bool degenerate = false;
};

// Least-squares rigid transform taking source[i] onto target[i].
KabschResult Kabsch(const std::vector<Vec3>& source, const std::vector<Vec3>& target);

// Point-to-point ICP from `init`. The returned RMS history is
// non-increasing: an update that would raise the RMS is rejected and the
// iteration stops.
AlignmentResult IcpAlign(const std::vector<Vec3>& source, const std::vector<Vec3>& target,
                         const RigidTransform& init, const IcpParams& params);

// Initial transform for restart k: k = 0 is the identity; k >= 1 is a random
// rotation about the source centroid, moved onto the target centroid.
RigidTransform RestartInitialTransform(const std::vector<Vec3>& source,
                                       const std::vector<Vec3>& target,
                                       const IcpParams& params, int restart);

// ICP from the identity plus params.restarts random starts; keeps the lowest
// RMS, ties to the lowest restart index.
AlignmentResult RobustAlign(const std::vector<Vec3>& source, const std::vector<Vec3>& target,
                            const IcpParams& params);

// RobustAlign on strided subsets of params.coarse_samples points, then
// IcpAlign on the full clouds from the winning transform.
AlignmentResult RobustAlignRefined(const std::vector<Vec3>& source,
                                   const std::vector<Vec3>& target, const IcpParams& params);

inline AlignmentResult RobustAlign(const PointCloud& source, const PointCloud& target,
                                   const IcpParams& params) {
  return RobustAlign(source.points, target.points, params);
}

}  // namespace propforge

#endif  // PROPFORGE_REGISTRATION_REGISTRATION_H_
