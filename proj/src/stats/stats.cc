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

#include "propforge/stats/stats.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <set>

#include "propforge/common/csv.h"
#include "propforge/common/error.h"

namespace propforge {
namespace {

constexpr double kZ95 = 1.959963984540054;

std::string Trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

bool ParseBool01(const std::string& field, int line) {
  const std::string v = Trim(field);
  if (v == "1") return true;
  if (v == "0") return false;
  Throw(ErrorCode::kParseError, "ratings line " + std::to_string(line) + ": expected 0 or 1, got '" + v + "'");
}

void FinishRate(GroupRate& g) {
  g.fraction = g.total == 0 ? 0.0 : static_cast<double>(g.successes) / static_cast<double>(g.total);
}

}  // namespace

AgreementStats FleissKappa(const RatingMatrix& ratings) {
  if (ratings.size() < 2) Throw(ErrorCode::kInvalidArgument, "Fleiss' kappa needs at least 2 items");
  const std::size_t n = ratings[0].size();
  if (n < 2) Throw(ErrorCode::kInvalidArgument, "Fleiss' kappa needs at least 2 raters per item");
  for (const auto& row : ratings) {
    if (row.size() != n) Throw(ErrorCode::kInvalidArgument, "every item needs the same rater count");
  }

  std::map<int, std::size_t> index;
  for (const auto& row : ratings) {
    for (int label : row) index.emplace(label, 0);
  }
  std::size_t k = 0;
  for (auto& [label, idx] : index) idx = k++;
  if (k < 2) Throw(ErrorCode::kDegenerateMarginals, "all ratings fall in one category");

  const std::size_t items = ratings.size();
  const double nd = static_cast<double>(n);
  std::vector<double> marginal(k, 0.0);
  double p_sum = 0.0;
  AgreementStats out;
  std::vector<double> counts(k);
  for (const auto& row : ratings) {
    std::fill(counts.begin(), counts.end(), 0.0);
    for (int label : row) counts[index[label]] += 1.0;
    double agree = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
      agree += counts[j] * (counts[j] - 1.0);
      marginal[j] += counts[j];
      if (counts[j] == nd) ++out.aligned_count;
    }
    p_sum += agree / (nd * (nd - 1.0));
  }
  const double total = static_cast<double>(items) * nd;
  double pe = 0.0;
  double pq = 0.0;
  double pq_skew = 0.0;
  for (std::size_t j = 0; j < k; ++j) {
    const double p = marginal[j] / total;
    pe += p * p;
    pq += p * (1.0 - p);
    pq_skew += p * (1.0 - p) * ((1.0 - p) - p);
  }
  out.observed_agreement = p_sum / static_cast<double>(items);
  out.chance_agreement = pe;
  out.kappa = (out.observed_agreement - pe) / (1.0 - pe);
  out.standard_error = std::sqrt(2.0) / (pq * std::sqrt(total * (nd - 1.0))) *
                       std::sqrt(std::max(0.0, pq * pq - pq_skew));
  out.z = out.kappa / out.standard_error;
  out.p_value = NormalTwoSidedP(out.z);
  out.ci_low = out.kappa - kZ95 * out.standard_error;
  out.ci_high = out.kappa + kZ95 * out.standard_error;
  out.total_count = items;
  out.aligned_fraction = static_cast<double>(out.aligned_count) / static_cast<double>(items);
  out.rater_count = n;
  out.category_count = k;
  return out;
}

std::string_view RatingConditionName(RatingCondition condition) {
  return condition == RatingCondition::kCustom ? "custom" : "general";
}

std::vector<RatingRecord> ParseRatings(std::string_view csv) {
  const CsvDocument doc = ParseCsv(csv);
  if (doc.rows.empty()) return {};
  const std::vector<std::string> expected = {"item_id", "rater_id", "q1", "q2", "q3", "condition"};
  std::vector<std::string> header;
  for (const auto& f : doc.rows[0].fields) header.push_back(Trim(f));
  if (header != expected) {
    Throw(ErrorCode::kParseError, "ratings header must be item_id,rater_id,q1,q2,q3,condition");
  }
  std::vector<RatingRecord> records;
  std::set<std::pair<std::string, std::string>> seen;
  for (std::size_t r = 1; r < doc.rows.size(); ++r) {
    const CsvRow& row = doc.rows[r];
    if (row.fields.size() != 6) {
      Throw(ErrorCode::kParseError, "ratings line " + std::to_string(row.line) + ": expected 6 fields");
    }
    RatingRecord rec;
    rec.item_id = Trim(row.fields[0]);
    rec.rater_id = Trim(row.fields[1]);
    for (int q = 0; q < 3; ++q) rec.answers[q] = ParseBool01(row.fields[2 + q], row.line);
    const std::string cond = Trim(row.fields[5]);
    if (cond == "custom" || cond == "object_specific") {
      rec.condition = RatingCondition::kCustom;
    } else if (cond == "general") {
      rec.condition = RatingCondition::kGeneral;
    } else {
      Throw(ErrorCode::kParseError, "ratings line " + std::to_string(row.line) +
                                        ": unknown condition '" + cond + "'");
    }
    if (!seen.emplace(rec.item_id, rec.rater_id).second) {
      Throw(ErrorCode::kParseError, "duplicate rating for item " + rec.item_id + " by " + rec.rater_id);
    }
    records.push_back(std::move(rec));
  }
  return records;
}

RatingMatrix BuildRatingMatrix(const std::vector<RatingRecord>& records, int question) {
  if (question < 0 || question > 2) Throw(ErrorCode::kInvalidArgument, "question index must be 0, 1 or 2");
  std::map<std::string, std::map<std::string, bool>> by_item;
  std::set<std::string> raters;
  for (const RatingRecord& r : records) {
    by_item[r.item_id][r.rater_id] = r.answers[question];
    raters.insert(r.rater_id);
  }
  RatingMatrix matrix;
  for (const auto& [item, answers] : by_item) {
    if (answers.size() != raters.size()) {
      Throw(ErrorCode::kInvalidArgument, "item " + item + " is not rated by every rater");
    }
    std::vector<int> row;
    for (const auto& [rater, yes] : answers) row.push_back(yes ? 1 : 0);
    matrix.push_back(std::move(row));
  }
  return matrix;
}

std::vector<ReconciledItem> ReconcileMajority(const std::vector<RatingRecord>& records) {
  struct Tally {
    RatingCondition condition;
    std::array<int, 3> yes{};
    int votes = 0;
  };
  std::map<std::string, Tally> tallies;
  for (const RatingRecord& r : records) {
    auto [it, inserted] = tallies.try_emplace(r.item_id, Tally{r.condition, {}, 0});
    if (!inserted && it->second.condition != r.condition) {
      Throw(ErrorCode::kInvalidArgument, "item " + r.item_id + " has conflicting condition labels");
    }
    for (int q = 0; q < 3; ++q) it->second.yes[q] += r.answers[q] ? 1 : 0;
    ++it->second.votes;
  }
  std::vector<ReconciledItem> items;
  for (const auto& [id, t] : tallies) {
    ReconciledItem item;
    item.item_id = id;
    item.condition = t.condition;
    for (int q = 0; q < 3; ++q) item.success[q] = 2 * t.yes[q] > t.votes;
    items.push_back(std::move(item));
  }
  return items;
}

SuccessSummary SuccessRates(const std::vector<ReconciledItem>& items) {
  SuccessSummary summary;
  for (const ReconciledItem& item : items) {
    for (int q = 0; q < 3; ++q) {
      QuestionRates& rates = summary.questions[q];
      GroupRate& group = item.condition == RatingCondition::kCustom ? rates.custom : rates.general;
      ++group.total;
      ++rates.overall.total;
      if (item.success[q]) {
        ++group.successes;
        ++rates.overall.successes;
      }
    }
  }
  if (summary.questions[0].custom.total == 0) Throw(ErrorCode::kEmptyGroup, "no custom-prompt items");
  if (summary.questions[0].general.total == 0) Throw(ErrorCode::kEmptyGroup, "no general-prompt items");
  for (QuestionRates& rates : summary.questions) {
    FinishRate(rates.custom);
    FinishRate(rates.general);
    FinishRate(rates.overall);
  }
  return summary;
}

double NormalTwoSidedP(double z) { return std::erfc(std::abs(z) / std::sqrt(2.0)); }

WilcoxonResult WilcoxonSignedRank(const std::vector<double>& a, const std::vector<double>& b,
                                  const WilcoxonOptions& options) {
  if (a.size() != b.size()) Throw(ErrorCode::kInvalidArgument, "paired samples differ in length");
  std::vector<double> diffs;
  WilcoxonResult out;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    if (!std::isfinite(d)) Throw(ErrorCode::kInvalidArgument, "paired samples must be finite");
    if (d == 0.0) {
      ++out.zeros_dropped;
    } else {
      diffs.push_back(d);
    }
  }
  if (diffs.empty()) Throw(ErrorCode::kAllZeroDifferences, "every paired difference is zero");
  if (diffs.size() < 5) {
    Throw(ErrorCode::kInvalidArgument, "signed-rank test needs at least 5 nonzero differences");
  }

  const std::size_t n = diffs.size();
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return std::abs(diffs[x]) < std::abs(diffs[y]);
  });
  std::vector<double> rank(n);
  double tie_term = 0.0;
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j + 1 < n && std::abs(diffs[order[j + 1]]) == std::abs(diffs[order[i]])) ++j;
    const double avg = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t t = i; t <= j; ++t) rank[order[t]] = avg;
    const double size = static_cast<double>(j - i + 1);
    tie_term += size * size * size - size;
    i = j + 1;
  }
  for (std::size_t i = 0; i < n; ++i) (diffs[i] > 0.0 ? out.w_plus : out.w_minus) += rank[i];

  const double nd = static_cast<double>(n);
  const double mean = nd * (nd + 1.0) / 4.0;
  out.variance = nd * (nd + 1.0) * (2.0 * nd + 1.0) / 24.0 - tie_term / 48.0;
  double dev = out.w_plus - mean;
  if (options.continuity_correction) {
    const double shrunk = std::max(0.0, std::abs(dev) - 0.5);
    dev = dev < 0.0 ? -shrunk : shrunk;
  }
  out.n = n;
  out.z = dev / std::sqrt(out.variance);
  out.p = NormalTwoSidedP(out.z);
  out.r = out.z / std::sqrt(nd);
  return out;
}

}  // namespace propforge
