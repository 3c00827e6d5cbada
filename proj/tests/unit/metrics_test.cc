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

#include <cmath>

#include <gtest/gtest.h>

#include "propforge/common/error.h"
#include "propforge/common/random.h"
#include "propforge/mesh/fixtures.h"
#include "propforge/metrics/metrics.h"

namespace propforge {
namespace {

TEST(MetricsTest, HandComputedConvention) {
  // a->b: 1. b->a: (1 + 3) / 2 = 2. Chamfer halves the sum.
  const std::vector<Vec3> a = {Vec3(0, 0, 0)};
  const std::vector<Vec3> b = {Vec3(1, 0, 0), Vec3(3, 0, 0)};
  EXPECT_DOUBLE_EQ(Chamfer(a, b), 1.5);
  EXPECT_DOUBLE_EQ(Chamfer(b, a), 1.5);
  EXPECT_DOUBLE_EQ(Hausdorff(a, b), 3.0);
  const DistancePair both = ChamferAndHausdorff(a, b);
  EXPECT_DOUBLE_EQ(both.chamfer, 1.5);
  EXPECT_DOUBLE_EQ(both.hausdorff, 3.0);
}

TEST(MetricsTest, EuclideanNotSquared) {
  const std::vector<Vec3> a = {Vec3(0, 0, 0)};
  const std::vector<Vec3> b = {Vec3(3, 4, 0)};
  EXPECT_DOUBLE_EQ(Chamfer(a, b), 5.0);
}

TEST(MetricsTest, IdenticalSetsAreZero) {
  Rng rng(1);
  std::vector<Vec3> a;
  for (int i = 0; i < 100; ++i) a.emplace_back(rng.Normal(), rng.Normal(), rng.Normal());
  EXPECT_EQ(Chamfer(a, a), 0.0);
  EXPECT_EQ(Hausdorff(a, a), 0.0);
}

TEST(MetricsTest, DirectedDistancesMatchBruteForce) {
  Rng rng(2);
  std::vector<Vec3> a;
  std::vector<Vec3> b;
  for (int i = 0; i < 200; ++i) a.emplace_back(rng.Normal(), rng.Normal(), rng.Normal());
  for (int i = 0; i < 150; ++i) b.emplace_back(rng.Normal(), rng.Normal(), rng.Normal());
  const std::vector<double> d = DirectedNnDistances(a, b);
  ASSERT_EQ(d.size(), a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    double best = INFINITY;
    for (const Vec3& q : b) best = std::min(best, (a[i] - q).norm());
    EXPECT_NEAR(d[i], best, 1e-15);
  }
}

TEST(MetricsTest, EmptyInputRejected) {
  EXPECT_THROW(Chamfer({}, {Vec3::Zero()}), Error);
}

TEST(MetricsTest, EvaluatePairIsDeterministic) {
  IcpParams params;
  params.seed = 5;
  params.restarts = 4;
  const TriangleMesh cone = MakeCone(0.5, 1.2, 24);
  const TriangleMesh cyl = MakeCylinder(0.5, 1.2, 24);
  const SimilarityReport a = EvaluatePair(cone, cyl, params, 2000);
  const SimilarityReport b = EvaluatePair(cone, cyl, params, 2000);
  EXPECT_EQ(a.chamfer, b.chamfer);
  EXPECT_EQ(a.hausdorff, b.hausdorff);
  EXPECT_EQ(a.sample_count, 2000u);
  EXPECT_GT(a.chamfer, 0.02);  // different shapes
  EXPECT_GE(a.hausdorff, a.chamfer);
}

TEST(MetricsTest, EvaluatePairIgnoresPoseAndScale) {
  IcpParams params;
  params.seed = 6;
  const TriangleMesh bracket = MakeCornerBracket();
  const Eigen::Matrix3d r = Eigen::AngleAxisd(2.0, Vec3(1, 1, 0).normalized()).toRotationMatrix();
  const TriangleMesh moved = Transformed(bracket, 2.5 * r, Vec3(3, -1, 4));
  const SimilarityReport report = EvaluatePair(bracket, moved, params, 5000);
  EXPECT_LT(report.chamfer, 0.03);
  EXPECT_LT(report.hausdorff, 0.1);
}

}  // namespace
}  // namespace propforge
