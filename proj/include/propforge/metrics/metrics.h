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

#ifndef PROPFORGE_METRICS_METRICS_H_
#define PROPFORGE_METRICS_METRICS_H_

#include <cstdint>
#include <string_view>
#include <vector>

#include "propforge/mesh/mesh.h"
#include "propforge/registration/registration.h"

namespace propforge {

// Written into every report so readers know which Chamfer variant was used.
inline constexpr std::string_view kChamferConvention =
    "0.5*(mean_a min_b |a-b| + mean_b min_a |a-b|), plain Euclidean distances";

inline constexpr std::size_t kDefaultSampleCount = 10000;

// For each a in `from`, the exact Euclidean distance to its nearest point in `to`.
std::vector<double> DirectedNnDistances(const std::vector<Vec3>& from,
                                        const std::vector<Vec3>& to);

struct DistancePair {
  double chamfer = 0.0;
  double hausdorff = 0.0;
};

double Chamfer(const std::vector<Vec3>& a, const std::vector<Vec3>& b);
double Hausdorff(const std::vector<Vec3>& a, const std::vector<Vec3>& b);
// Both metrics from one pair of directed passes.
DistancePair ChamferAndHausdorff(const std::vector<Vec3>& a, const std::vector<Vec3>& b);

struct SimilarityReport {
  double chamfer = 0.0;
  double hausdorff = 0.0;
  std::size_t sample_count = 0;
  AlignmentResult alignment;
  std::uint64_t seed = 0;
};

// Unit-sphere normalizes both meshes, samples n points on each (distinct
// derived seeds), aligns generated onto original with RobustAlignRefined
// (params.seed drives both sampling and restarts) and measures the aligned
// clouds.
SimilarityReport EvaluatePair(const TriangleMesh& original, const TriangleMesh& generated,
                              const IcpParams& params,
                              std::size_t n_samples = kDefaultSampleCount);

// Same procedure for raw point sets; each is normalized with the point-set
// variant of unit-sphere normalization.
SimilarityReport EvaluateClouds(const std::vector<Vec3>& reference,
                                const std::vector<Vec3>& candidate, const IcpParams& params);

}  // namespace propforge

#endif  // PROPFORGE_METRICS_METRICS_H_
