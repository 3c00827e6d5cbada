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

#include "propforge/registration/registration.h"

#include <Eigen/Geometry>
#include <Eigen/SVD>
#include <cmath>
#include <string>

#include "propforge/common/error.h"
#include "propforge/common/random.h"
#include "propforge/registration/kdtree.h"

namespace propforge {
namespace {

Vec3 Centroid(const std::vector<Vec3>& points) {
  Vec3 c = Vec3::Zero();
  for (const Vec3& p : points) c += p;
  return c / static_cast<double>(points.size());
}

struct Correspondences {
  std::vector<Vec3> matched;
  double rms = 0.0;
};

Correspondences Match(const std::vector<Vec3>& source, const RigidTransform& transform,
                      const KdTree& tree) {
  Correspondences out;
  out.matched.reserve(source.size());
  double sum = 0.0;
  for (const Vec3& p : source) {
    const Neighbor nn = tree.Nearest(transform.Apply(p));
    out.matched.push_back(tree.points()[nn.index]);
    sum += nn.squared_distance;
  }
  out.rms = std::sqrt(sum / static_cast<double>(source.size()));
  return out;
}

// Evenly strided subset; spreads out even when the input is scan-ordered.
std::vector<Vec3> Subsample(const std::vector<Vec3>& points, std::size_t n) {
  if (points.size() <= n) return points;
  std::vector<Vec3> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(points[i * points.size() / n]);
  return out;
}

}  // namespace

std::vector<Vec3> RigidTransform::Apply(const std::vector<Vec3>& points) const {
  std::vector<Vec3> out;
  out.reserve(points.size());
  for (const Vec3& p : points) out.push_back(Apply(p));
  return out;
}

RigidTransform RigidTransform::Compose(const RigidTransform& other) const {
  return {rotation * other.rotation, rotation * other.translation + translation};
}

RigidTransform RigidTransform::Inverse() const {
  const Eigen::Matrix3d rt = rotation.transpose();
  return {rt, -(rt * translation)};
}

bool IsProperRotation(const Eigen::Matrix3d& rotation, double tol) {
  const double ortho = (rotation.transpose() * rotation - Eigen::Matrix3d::Identity())
                           .cwiseAbs()
                           .maxCoeff();
  return ortho <= tol && std::abs(rotation.determinant() - 1.0) <= tol;
}

void IcpParams::Validate() const {
  if (max_iterations < 1) Throw(ErrorCode::kInvalidArgument, "max_iterations must be >= 1");
  if (!(convergence_tol > 0.0)) Throw(ErrorCode::kInvalidArgument, "convergence_tol must be > 0");
  if (restarts < 1) Throw(ErrorCode::kInvalidArgument, "restarts must be >= 1");
}

RigidTransform RandomRotation(std::uint64_t seed) {
  Rng rng(seed);
  Eigen::Vector4d q;
  do {
    for (int i = 0; i < 4; ++i) q[i] = rng.Normal();
  } while (q.norm() < 1e-12);
  q.normalize();
  const Eigen::Quaterniond quat(q[0], q[1], q[2], q[3]);
  RigidTransform t;
  t.rotation = quat.toRotationMatrix();
  return t;
}

KabschResult Kabsch(const std::vector<Vec3>& source, const std::vector<Vec3>& target) {
  if (source.size() != target.size()) {
    Throw(ErrorCode::kInvalidArgument, "Kabsch needs equally sized point sets");
  }
  if (source.empty()) Throw(ErrorCode::kInvalidArgument, "Kabsch needs at least one point");

  const Vec3 cs = Centroid(source);
  const Vec3 ct = Centroid(target);
  Eigen::Matrix3d cov = Eigen::Matrix3d::Zero();
  for (std::size_t i = 0; i < source.size(); ++i) {
    cov += (source[i] - cs) * (target[i] - ct).transpose();
  }
  const Eigen::JacobiSVD<Eigen::Matrix3d> svd(cov, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Eigen::Matrix3d& u = svd.matrixU();
  const Eigen::Matrix3d& v = svd.matrixV();
  Eigen::Matrix3d d = Eigen::Matrix3d::Identity();
  if ((v * u.transpose()).determinant() < 0.0) d(2, 2) = -1.0;

  KabschResult result;
  result.transform.rotation = v * d * u.transpose();
  result.transform.translation = ct - result.transform.rotation * cs;
  const Eigen::Vector3d sigma = svd.singularValues();
  result.degenerate = !(sigma[0] > 0.0) || sigma[1] <= 1e-12 * sigma[0];
  return result;
}

AlignmentResult IcpAlign(const std::vector<Vec3>& source, const std::vector<Vec3>& target,
                         const RigidTransform& init, const IcpParams& params) {
  params.Validate();
  if (source.size() < 3 || target.size() < 3) {
    Throw(ErrorCode::kInvalidArgument, "ICP needs at least 3 points per cloud");
  }
  const KdTree tree(target);

  AlignmentResult result;
  result.transform = init;
  Correspondences current = Match(source, init, tree);
  result.rms = current.rms;
  result.rms_history.push_back(current.rms);

  for (int it = 0; it < params.max_iterations; ++it) {
    const RigidTransform candidate = Kabsch(source, current.matched).transform;
    Correspondences next = Match(source, candidate, tree);
    if (next.rms > result.rms) break;
    const double improvement = result.rms - next.rms;
    result.transform = candidate;
    result.rms = next.rms;
    result.rms_history.push_back(next.rms);
    ++result.iterations_used;
    current = std::move(next);
    if (improvement < params.convergence_tol) break;
  }
  return result;
}

RigidTransform RestartInitialTransform(const std::vector<Vec3>& source,
                                       const std::vector<Vec3>& target,
                                       const IcpParams& params, int restart) {
  if (restart == 0) return RigidTransform::Identity();
  RigidTransform init = RandomRotation(DeriveSeed(params.seed, static_cast<std::uint64_t>(restart)));
  init.translation = Centroid(target) - init.rotation * Centroid(source);
  return init;
}

AlignmentResult RobustAlign(const std::vector<Vec3>& source, const std::vector<Vec3>& target,
                            const IcpParams& params) {
  params.Validate();
  AlignmentResult best;
  for (int k = 0; k <= params.restarts; ++k) {
    AlignmentResult r =
        IcpAlign(source, target, RestartInitialTransform(source, target, params, k), params);
    r.restart_index = k;
    if (k == 0 || r.rms < best.rms) best = std::move(r);
  }
  return best;
}

AlignmentResult RobustAlignRefined(const std::vector<Vec3>& source,
                                   const std::vector<Vec3>& target, const IcpParams& params) {
  const std::size_t k = params.coarse_samples;
  if (k == 0 || (source.size() <= k && target.size() <= k)) {
    return RobustAlign(source, target, params);
  }
  const AlignmentResult coarse = RobustAlign(Subsample(source, k), Subsample(target, k), params);
  AlignmentResult refined = IcpAlign(source, target, coarse.transform, params);
  refined.restart_index = coarse.restart_index;
  refined.iterations_used += coarse.iterations_used;
  return refined;
}

}  // namespace propforge
