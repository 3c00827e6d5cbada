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

#ifndef PROPFORGE_HARNESS_REPORT_H_
#define PROPFORGE_HARNESS_REPORT_H_

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace propforge {

// One completed (object, prompt) generation and its evaluation.
struct PairRow {
  std::string object_id;
  std::size_t prompt_index = 0;  // position in the prompt manifest
  std::string prompt;
  std::string condition;         // "general" or "object_specific"
  std::string template_kind;
  std::string job_id;
  std::uint64_t seed = 0;
  std::string generated_mesh;    // asset reference of the reconstructed mesh
  // Against the full surface of the normalized source mesh.
  double chamfer = 0.0;
  double hausdorff = 0.0;
  // Against the source surface visible from the capture viewpoint.
  double visible_chamfer = 0.0;
  double visible_hausdorff = 0.0;
  std::size_t sample_count = 0;
  int restart_index = 0;
  double alignment_rms = 0.0;

  bool operator==(const PairRow&) const = default;
};

struct PairFailure {
  std::string object_id;
  std::size_t prompt_index = 0;
  std::string job_id;
  std::string stage;
  std::string reason;

  bool operator==(const PairFailure&) const = default;
};

struct Aggregate {
  std::size_t count = 0;
  double mean_chamfer = 0.0;
  double mean_hausdorff = 0.0;
  double mean_visible_chamfer = 0.0;

  bool operator==(const Aggregate&) const = default;
};

struct StudyReport {
  std::vector<PairRow> rows;          // completed pairs, canonical order
  std::vector<PairFailure> failures;  // canonical order
  std::size_t planned_pairs = 0;
  bool complete = true;               // false when the run was cut short
  Aggregate general;
  Aggregate object_specific;
  Aggregate overall;
  // Every parameter that shapes the numbers, as strings.
  std::map<std::string, std::string> config;

  bool operator==(const StudyReport&) const = default;
};

// Published aggregates over 800 live generations, echoed for comparison.
inline constexpr double kReferenceChamfer = 0.322;
inline constexpr double kReferenceHausdorff = 0.456;
inline constexpr std::size_t kReferencePairs = 800;

// Sorts rows and failures into (object_id, prompt_index) order and fills
// the aggregates from the rows.
void FinalizeReport(StudyReport& report);
Aggregate ComputeAggregate(const std::vector<PairRow>& rows, std::string_view condition);

enum class ReportFormat { kJson, kCsv };

// Both formats first check that the aggregates match the rows (InvalidState
// otherwise).
std::string EmitReport(const StudyReport& report, ReportFormat format);
// Inverse of the JSON format. ParseError on malformed input.
StudyReport ParseReportJson(std::string_view json);

}  // namespace propforge

#endif  // PROPFORGE_HARNESS_REPORT_H_
