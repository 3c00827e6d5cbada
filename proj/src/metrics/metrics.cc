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

#include "propforge/metrics/metrics.h"

#include <algorithm>
#include <cmath>

#include "propforge/common/error.h"
#include "propforge/common/random.h"
#include "propforge/registration/kdtree.h"

namespace propforge {
namespace {

double Mean(const std::vector<double>& values) {
  double sum = 0.0;
  for (double v : values) sum += v;
  return sum / static_cast<double>(values.size());
}

double Max(const std::vector<double>& values) {
  return *std::max_element(values.begin(), values.end());
}

void RequireNonEmpty(const std::vector<Vec3>& a, const std::vector<Vec3>& b) {
  if (a.empty() || b.empty()) {
    Throw(ErrorCode::kInvalidArgument, "distance metrics need nonempty point sets");
  }
}

SimilarityReport AlignAndMeasure(const std::vector<Vec3>& reference,
                                 const std::vector<Vec3>& candidate, const IcpParams& params) {
  SimilarityReport report;
  report.alignment = RobustAlignRefined(candidate, reference, params);
  const std::vector<Vec3> aligned = report.alignment.transform.Apply(candidate);
  const DistancePair d = ChamferAndHausdorff(reference, aligned);
  report.chamfer = d.chamfer;
  report.hausdorff = d.hausdorff;
  report.seed = params.seed;
  return report;
}

}  // namespace

std::vector<double> DirectedNnDistances(const std::vector<Vec3>& from,
                                        const std::vector<Vec3>& to) {
  RequireNonEmpty(from, to);
  const KdTree tree(to);
  std::vector<double> out;
  out.reserve(from.size());
  for (const Vec3& p : from) out.push_back(std::sqrt(tree.Nearest(p).squared_distance));
  return out;
}

DistancePair ChamferAndHausdorff(const std::vector<Vec3>& a, const std::vector<Vec3>& b) {
  const std::vector<double> ab = DirectedNnDistances(a, b);
  const std::vector<double> ba = DirectedNnDistances(b, a);
  return {0.5 * (Mean(ab) + Mean(ba)), std::max(Max(ab), Max(ba))};
}

double Chamfer(const std::vector<Vec3>& a, const std::vector<Vec3>& b) {
  return ChamferAndHausdorff(a, b).chamfer;
}

double Hausdorff(const std::vector<Vec3>& a, const std::vector<Vec3>& b) {
  return ChamferAndHausdorff(a, b).hausdorff;
}

SimilarityReport EvaluatePair(const TriangleMesh& original, const TriangleMesh& generated,
                              const IcpParams& params, std::size_t n_samples) {
  params.Validate();
  const TriangleMesh a = NormalizeUnitSphere(original).mesh;
  const TriangleMesh b = NormalizeUnitSphere(generated).mesh;
  const PointCloud pa = SampleSurface(a, n_samples, DeriveSeed(params.seed, 1));
  const PointCloud pb = SampleSurface(b, n_samples, DeriveSeed(params.seed, 2));
  SimilarityReport report = AlignAndMeasure(pa.points, pb.points, params);
  report.sample_count = n_samples;
  return report;
}

SimilarityReport EvaluateClouds(const std::vector<Vec3>& reference,
                                const std::vector<Vec3>& candidate, const IcpParams& params) {
  params.Validate();
  const PointCloud a = NormalizeUnitSphere(PointCloud{reference, 0});
  const PointCloud b = NormalizeUnitSphere(PointCloud{candidate, 0});
  SimilarityReport report = AlignAndMeasure(a.points, b.points, params);
  report.sample_count = std::min(reference.size(), candidate.size());
  return report;
}

}  // namespace propforge
