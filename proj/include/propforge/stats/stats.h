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

#ifndef PROPFORGE_STATS_STATS_H_
#define PROPFORGE_STATS_STATS_H_

#include <array>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace propforge {

// ---- Inter-rater agreement ----

// ratings[item][rater] holds a category label; labels are arbitrary ints.
using RatingMatrix = std::vector<std::vector<int>>;

struct AgreementStats {
  double kappa = 0.0;
  double observed_agreement = 0.0;  // mean per-item agreement P-bar
  double chance_agreement = 0.0;    // P-bar_e from the category marginals
  // Large-sample standard error under the null hypothesis kappa = 0
  // (Fleiss, Nee and Landis). The 95% interval is kappa +- 1.96 * se.
  double standard_error = 0.0;
  double z = 0.0;
  double p_value = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  std::size_t aligned_count = 0;  // items on which every rater agrees
  std::size_t total_count = 0;
  double aligned_fraction = 0.0;
  std::size_t rater_count = 0;
  std::size_t category_count = 0;
};

// Errors: InvalidArgument for fewer than 2 items or raters or ragged rows,
// DegenerateMarginals when a single category is used throughout.
AgreementStats FleissKappa(const RatingMatrix& ratings);

// ---- Ratings file ----

enum class RatingCondition { kCustom, kGeneral };

std::string_view RatingConditionName(RatingCondition condition);

struct RatingRecord {
  std::string item_id;
  std::string rater_id;
  std::array<bool, 3> answers{};  // q1 main elements, q2 features, q3 theme
  RatingCondition condition = RatingCondition::kCustom;
};

// CSV item_id,rater_id,q1,q2,q3,condition with 0/1 answers and condition
// "custom" or "general" ("object_specific" is accepted as custom).
std::vector<RatingRecord> ParseRatings(std::string_view csv);

// Item x rater matrix of one question's answers; items and raters in
// lexicographic id order. Every item must be rated by the same raters.
RatingMatrix BuildRatingMatrix(const std::vector<RatingRecord>& records, int question);

// ---- Success rates ----

struct ReconciledItem {
  std::string item_id;
  RatingCondition condition = RatingCondition::kCustom;
  std::array<bool, 3> success{};
};

// Majority vote per question across raters; ties count as failure.
std::vector<ReconciledItem> ReconcileMajority(const std::vector<RatingRecord>& records);

struct GroupRate {
  std::size_t successes = 0;
  std::size_t total = 0;
  double fraction = 0.0;
};

struct QuestionRates {
  GroupRate custom;
  GroupRate general;
  GroupRate overall;  // pooled over both groups
};

struct SuccessSummary {
  std::array<QuestionRates, 3> questions;
};

// EmptyGroup when either condition has no items.
SuccessSummary SuccessRates(const std::vector<ReconciledItem>& items);

// ---- Paired signed-rank test ----

struct WilcoxonOptions {
  // Shift |W+ - mu| toward zero by 0.5 before standardizing. Keeps the
  // normal approximation close to the exact p for small n; switch off to
  // get the uncorrected z.
  bool continuity_correction = true;
};

struct WilcoxonResult {
  double z = 0.0;        // positive when a tends to exceed b
  double p = 0.0;        // two-sided, normal approximation
  double r = 0.0;        // z / sqrt(n)
  double w_plus = 0.0;   // rank sum of positive differences
  double w_minus = 0.0;
  std::size_t n = 0;     // nonzero differences
  std::size_t zeros_dropped = 0;
  double variance = 0.0; // tie-corrected null variance of W+
};

// Differences a[i] - b[i]; zeros are dropped, tied magnitudes get average
// ranks. Errors: InvalidArgument for unequal lengths or fewer than 5
// nonzero differences, AllZeroDifferences when every pair is equal.
WilcoxonResult WilcoxonSignedRank(const std::vector<double>& a, const std::vector<double>& b,
                                  const WilcoxonOptions& options = {});

// Two-sided p-value of a standard normal statistic.
double NormalTwoSidedP(double z);

}  // namespace propforge

#endif  // PROPFORGE_STATS_STATS_H_
