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

#include "propforge/pipeline/job.h"

#include <chrono>
#include <ctime>
#include <iomanip>
#include <sstream>

#include <nlohmann/json.hpp>

#include "propforge/common/error.h"

namespace propforge {
namespace {

using nlohmann::json;

constexpr JobState kStates[] = {JobState::kPending,           JobState::kImageGenerated,
                                JobState::kBackgroundRemoved, JobState::kMeshReconstructed,
                                JobState::kAnchored,          JobState::kFailed};
constexpr Stage kStages[] = {Stage::kTextToImage, Stage::kBackgroundRemoval,
                             Stage::kImageToMesh, Stage::kAnchoring};

json VecToJson(const Vec3& v) { return json::array({v.x(), v.y(), v.z()}); }

Vec3 VecFromJson(const json& j) {
  if (!j.is_array() || j.size() != 3) Throw(ErrorCode::kParseError, "expected a 3-vector");
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

}  // namespace

std::string_view JobStateName(JobState state) {
  switch (state) {
    case JobState::kPending:
      return "Pending";
    case JobState::kImageGenerated:
      return "ImageGenerated";
    case JobState::kBackgroundRemoved:
      return "BackgroundRemoved";
    case JobState::kMeshReconstructed:
      return "MeshReconstructed";
    case JobState::kAnchored:
      return "Anchored";
    case JobState::kFailed:
      return "Failed";
  }
  return "Unknown";
}

JobState ParseJobState(std::string_view name) {
  for (JobState s : kStates) {
    if (JobStateName(s) == name) return s;
  }
  Throw(ErrorCode::kParseError, "unknown job state '" + std::string(name) + "'");
}

std::string_view StageName(Stage stage) {
  switch (stage) {
    case Stage::kTextToImage:
      return "text_to_image";
    case Stage::kBackgroundRemoval:
      return "background_removal";
    case Stage::kImageToMesh:
      return "image_to_mesh";
    case Stage::kAnchoring:
      return "anchoring";
  }
  return "unknown";
}

Stage ParseStage(std::string_view name) {
  for (Stage s : kStages) {
    if (StageName(s) == name) return s;
  }
  Throw(ErrorCode::kParseError, "unknown stage '" + std::string(name) + "'");
}

JobState StateAfter(Stage stage) {
  return static_cast<JobState>(static_cast<int>(stage) + 1);
}

bool IsTerminal(JobState state) {
  return state == JobState::kAnchored || state == JobState::kFailed;
}

bool IsValidTransition(JobState from, JobState to) {
  if (IsTerminal(from)) return false;
  if (to == JobState::kFailed) return true;
  return static_cast<int>(to) == static_cast<int>(from) + 1;
}

void GenerationJob::TransitionTo(JobState next, std::string timestamp) {
  if (!IsValidTransition(state, next)) {
    Throw(ErrorCode::kInvalidState, "job " + id + ": cannot move from " +
                                        std::string(JobStateName(state)) + " to " +
                                        std::string(JobStateName(next)));
  }
  state = next;
  history.push_back({next, std::move(timestamp)});
}

const StageRecord* GenerationJob::stage(Stage s) const {
  const auto it = stages.find(std::string(StageName(s)));
  return it == stages.end() ? nullptr : &it->second;
}

std::string JobToJson(const GenerationJob& job) {
  json j;
  j["id"] = job.id;
  j["prompt"] = {{"text", job.prompt_text},
                 {"template_kind", TemplateKindName(job.template_kind)},
                 {"condition", job.condition ? json(PromptConditionName(*job.condition)) : json()},
                 {"object_id", job.object_id}};
  j["seed"] = job.seed;
  j["input_rgb"] = job.input_rgb;
  j["input_depth"] = job.input_depth;
  if (job.reference_box) {
    j["reference_box"] = {{"min", VecToJson(job.reference_box->min)},
                          {"max", VecToJson(job.reference_box->max)}};
  } else {
    j["reference_box"] = nullptr;
  }
  j["backend"] = job.backend;
  j["metadata"] = job.metadata;
  j["state"] = JobStateName(job.state);
  if (job.failed_stage) {
    j["failure"] = {{"stage", StageName(*job.failed_stage)}, {"reason", job.failure_reason}};
  } else {
    j["failure"] = nullptr;
  }
  json stages = json::object();
  for (const auto& [name, rec] : job.stages) {
    stages[name] = {{"artifact", rec.artifact},
                    {"cache_key", rec.cache_key},
                    {"cache_hit", rec.cache_hit},
                    {"attempts", rec.attempts}};
  }
  j["artifacts"] = stages;
  json history = json::array();
  for (const JobTransition& t : job.history) {
    history.push_back({{"state", JobStateName(t.state)}, {"at", t.timestamp}});
  }
  j["history"] = history;
  j["total_seconds"] = job.total_seconds;
  return j.dump(2);
}

GenerationJob JobFromJson(std::string_view text) {
  try {
    const json j = json::parse(text);
    GenerationJob job;
    job.id = j.at("id").get<std::string>();
    const json& prompt = j.at("prompt");
    job.prompt_text = prompt.at("text").get<std::string>();
    const auto kind = ParseTemplateKind(prompt.at("template_kind").get<std::string>());
    if (!kind) Throw(ErrorCode::kParseError, "unknown template kind in job record");
    job.template_kind = *kind;
    if (!prompt.at("condition").is_null()) {
      job.condition = prompt.at("condition").get<std::string>() == "general"
                          ? PromptCondition::kGeneral
                          : PromptCondition::kObjectSpecific;
    }
    job.object_id = prompt.at("object_id").get<std::string>();
    job.seed = j.at("seed").get<std::uint64_t>();
    job.input_rgb = j.at("input_rgb").get<std::string>();
    job.input_depth = j.at("input_depth").get<std::string>();
    if (!j.at("reference_box").is_null()) {
      job.reference_box = Aabb{VecFromJson(j["reference_box"].at("min")),
                               VecFromJson(j["reference_box"].at("max"))};
    }
    job.backend = j.at("backend").get<std::string>();
    job.metadata = j.at("metadata").get<std::map<std::string, std::string>>();
    job.state = ParseJobState(j.at("state").get<std::string>());
    if (!j.at("failure").is_null()) {
      job.failed_stage = ParseStage(j["failure"].at("stage").get<std::string>());
      job.failure_reason = j["failure"].at("reason").get<std::string>();
    }
    for (const auto& [name, rec] : j.at("artifacts").items()) {
      StageRecord r;
      r.artifact = rec.at("artifact").get<std::string>();
      r.cache_key = rec.at("cache_key").get<std::string>();
      r.cache_hit = rec.at("cache_hit").get<bool>();
      r.attempts = rec.at("attempts").get<int>();
      job.stages[name] = r;
    }
    for (const json& t : j.at("history")) {
      job.history.push_back({ParseJobState(t.at("state").get<std::string>()),
                             t.at("at").get<std::string>()});
    }
    job.total_seconds = j.at("total_seconds").get<double>();
    return job;
  } catch (const json::exception& e) {
    Throw(ErrorCode::kParseError, std::string("malformed job record: ") + e.what());
  }
}

std::string UtcTimestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  const auto ms =
      std::chrono::duration_cast<std::chrono::milliseconds>(now.time_since_epoch()).count() % 1000;
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::ostringstream out;
  out << std::put_time(&tm, "%Y-%m-%dT%H:%M:%S") << '.' << std::setw(3) << std::setfill('0') << ms
      << 'Z';
  return out.str();
}

}  // namespace propforge
