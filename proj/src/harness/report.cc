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

#include "propforge/harness/report.h"

#include <algorithm>
#include <sstream>
#include <tuple>

#include <nlohmann/json.hpp>

#include "propforge/common/csv.h"
#include "propforge/common/error.h"
#include "propforge/metrics/metrics.h"

namespace propforge {
namespace {

using nlohmann::ordered_json;

std::string FormatDouble(double v) {
  std::ostringstream out;
  out.precision(17);
  out << v;
  return out.str();
}

ordered_json AggregateJson(const Aggregate& a) {
  return {{"count", a.count},
          {"mean_chamfer", a.mean_chamfer},
          {"mean_hausdorff", a.mean_hausdorff},
          {"mean_visible_chamfer", a.mean_visible_chamfer}};
}

Aggregate AggregateFromJson(const ordered_json& j) {
  Aggregate a;
  a.count = j.at("count").get<std::size_t>();
  a.mean_chamfer = j.at("mean_chamfer").get<double>();
  a.mean_hausdorff = j.at("mean_hausdorff").get<double>();
  a.mean_visible_chamfer = j.at("mean_visible_chamfer").get<double>();
  return a;
}

void CheckConsistency(const StudyReport& report) {
  if (ComputeAggregate(report.rows, "general") != report.general ||
      ComputeAggregate(report.rows, "object_specific") != report.object_specific ||
      ComputeAggregate(report.rows, "") != report.overall) {
    Throw(ErrorCode::kInvalidState, "report aggregates do not match its rows");
  }
}

}  // namespace

Aggregate ComputeAggregate(const std::vector<PairRow>& rows, std::string_view condition) {
  Aggregate a;
  for (const PairRow& r : rows) {
    if (!condition.empty() && r.condition != condition) continue;
    ++a.count;
    a.mean_chamfer += r.chamfer;
    a.mean_hausdorff += r.hausdorff;
    a.mean_visible_chamfer += r.visible_chamfer;
  }
  if (a.count > 0) {
    const double n = static_cast<double>(a.count);
    a.mean_chamfer /= n;
    a.mean_hausdorff /= n;
    a.mean_visible_chamfer /= n;
  }
  return a;
}

void FinalizeReport(StudyReport& report) {
  auto key = [](const auto& x) { return std::tie(x.object_id, x.prompt_index); };
  std::sort(report.rows.begin(), report.rows.end(),
            [&](const PairRow& a, const PairRow& b) { return key(a) < key(b); });
  std::sort(report.failures.begin(), report.failures.end(),
            [&](const PairFailure& a, const PairFailure& b) { return key(a) < key(b); });
  report.general = ComputeAggregate(report.rows, "general");
  report.object_specific = ComputeAggregate(report.rows, "object_specific");
  report.overall = ComputeAggregate(report.rows, "");
}

std::string EmitReport(const StudyReport& report, ReportFormat format) {
  CheckConsistency(report);
  if (format == ReportFormat::kCsv) {
    std::string out = CsvJoin({"object_id", "prompt_index", "condition", "template_kind", "prompt",
                               "job_id", "seed", "generated_mesh", "chamfer", "hausdorff",
                               "visible_chamfer", "visible_hausdorff", "sample_count",
                               "restart_index", "alignment_rms"}) +
                      "\n";
    for (const PairRow& r : report.rows) {
      out += CsvJoin({r.object_id, std::to_string(r.prompt_index), r.condition, r.template_kind,
                      r.prompt, r.job_id, std::to_string(r.seed), r.generated_mesh,
                      FormatDouble(r.chamfer), FormatDouble(r.hausdorff),
                      FormatDouble(r.visible_chamfer), FormatDouble(r.visible_hausdorff),
                      std::to_string(r.sample_count), std::to_string(r.restart_index),
                      FormatDouble(r.alignment_rms)}) +
             "\n";
    }
    return out;
  }

  ordered_json j;
  j["metric_convention"] = kChamferConvention;
  j["complete"] = report.complete;
  j["counts"] = {{"planned", report.planned_pairs},
                 {"completed", report.rows.size()},
                 {"failed", report.failures.size()}};
  j["aggregates"] = {{"general", AggregateJson(report.general)},
                     {"object_specific", AggregateJson(report.object_specific)},
                     {"overall", AggregateJson(report.overall)}};
  j["reference"] = {{"chamfer", kReferenceChamfer},
                    {"hausdorff", kReferenceHausdorff},
                    {"pairs", kReferencePairs},
                    {"note", "published aggregates over live generations; not expected to match "
                             "mock-backend runs"}};
  ordered_json config = ordered_json::object();
  for (const auto& [k, v] : report.config) config[k] = v;
  j["config"] = config;
  ordered_json rows = ordered_json::array();
  for (const PairRow& r : report.rows) {
    rows.push_back({{"object_id", r.object_id},
                    {"prompt_index", r.prompt_index},
                    {"condition", r.condition},
                    {"template_kind", r.template_kind},
                    {"prompt", r.prompt},
                    {"job_id", r.job_id},
                    {"seed", r.seed},
                    {"generated_mesh", r.generated_mesh},
                    {"chamfer", r.chamfer},
                    {"hausdorff", r.hausdorff},
                    {"visible_chamfer", r.visible_chamfer},
                    {"visible_hausdorff", r.visible_hausdorff},
                    {"sample_count", r.sample_count},
                    {"restart_index", r.restart_index},
                    {"alignment_rms", r.alignment_rms}});
  }
  j["rows"] = rows;
  ordered_json failures = ordered_json::array();
  for (const PairFailure& f : report.failures) {
    failures.push_back({{"object_id", f.object_id},
                        {"prompt_index", f.prompt_index},
                        {"job_id", f.job_id},
                        {"stage", f.stage},
                        {"reason", f.reason}});
  }
  j["failures"] = failures;
  return j.dump(2) + "\n";
}

StudyReport ParseReportJson(std::string_view text) {
  try {
    const ordered_json j = ordered_json::parse(text);
    StudyReport report;
    report.complete = j.at("complete").get<bool>();
    report.planned_pairs = j.at("counts").at("planned").get<std::size_t>();
    report.general = AggregateFromJson(j.at("aggregates").at("general"));
    report.object_specific = AggregateFromJson(j.at("aggregates").at("object_specific"));
    report.overall = AggregateFromJson(j.at("aggregates").at("overall"));
    for (const auto& [k, v] : j.at("config").items()) report.config[k] = v.get<std::string>();
    for (const ordered_json& r : j.at("rows")) {
      PairRow row;
      row.object_id = r.at("object_id").get<std::string>();
      row.prompt_index = r.at("prompt_index").get<std::size_t>();
      row.condition = r.at("condition").get<std::string>();
      row.template_kind = r.at("template_kind").get<std::string>();
      row.prompt = r.at("prompt").get<std::string>();
      row.job_id = r.at("job_id").get<std::string>();
      row.seed = r.at("seed").get<std::uint64_t>();
      row.generated_mesh = r.at("generated_mesh").get<std::string>();
      row.chamfer = r.at("chamfer").get<double>();
      row.hausdorff = r.at("hausdorff").get<double>();
      row.visible_chamfer = r.at("visible_chamfer").get<double>();
      row.visible_hausdorff = r.at("visible_hausdorff").get<double>();
      row.sample_count = r.at("sample_count").get<std::size_t>();
      row.restart_index = r.at("restart_index").get<int>();
      row.alignment_rms = r.at("alignment_rms").get<double>();
      report.rows.push_back(std::move(row));
    }
    for (const ordered_json& f : j.at("failures")) {
      report.failures.push_back({f.at("object_id").get<std::string>(),
                                 f.at("prompt_index").get<std::size_t>(),
                                 f.at("job_id").get<std::string>(), f.at("stage").get<std::string>(),
                                 f.at("reason").get<std::string>()});
    }
    return report;
  } catch (const nlohmann::json::exception& e) {
    Throw(ErrorCode::kParseError, std::string("malformed report: ") + e.what());
  }
}

}  // namespace propforge
