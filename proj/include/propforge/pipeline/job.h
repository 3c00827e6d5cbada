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

#ifndef PROPFORGE_PIPELINE_JOB_H_
#define PROPFORGE_PIPELINE_JOB_H_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "propforge/mesh/mesh.h"
#include "propforge/prompt/prompt.h"

namespace propforge {

enum class JobState {
  kPending,
  kImageGenerated,
  kBackgroundRemoved,
  kMeshReconstructed,
  kAnchored,
  kFailed,
};

enum class Stage { kTextToImage, kBackgroundRemoval, kImageToMesh, kAnchoring };

std::string_view JobStateName(JobState state);
JobState ParseJobState(std::string_view name);
std::string_view StageName(Stage stage);
Stage ParseStage(std::string_view name);

// State reached when `stage` succeeds.
JobState StateAfter(Stage stage);
// Forward by exactly one stage, or into Failed from any non-terminal state.
bool IsValidTransition(JobState from, JobState to);
bool IsTerminal(JobState state);

struct JobTransition {
  JobState state = JobState::kPending;
  std::string timestamp;  // UTC, ISO 8601
};

struct StageRecord {
  std::string artifact;   // asset reference
  std::string cache_key;
  bool cache_hit = false;
  int attempts = 0;       // remote calls made, 0 on a cache hit
};

struct GenerationJob {
  std::string id;
  std::string prompt_text;
  TemplateKind template_kind = TemplateKind::kNoun;
  std::optional<PromptCondition> condition;
  std::string object_id;
  std::uint64_t seed = 0;
  std::string input_rgb;    // asset reference, PNG
  std::string input_depth;  // asset reference, 8-bit depth PNG
  // Runtime reference box for anchoring; absent means reconstruct it from
  // the RGB capture.
  std::optional<Aabb> reference_box;
  std::string backend;      // composite backend identifier
  // Free-form capture notes, e.g. the camera pose the depth map came from.
  std::map<std::string, std::string> metadata;
  JobState state = JobState::kPending;
  std::optional<Stage> failed_stage;
  std::string failure_reason;
  std::map<std::string, StageRecord> stages;  // keyed by StageName
  std::vector<JobTransition> history;
  double total_seconds = 0.0;

  // Throws InvalidState for an illegal move; appends to history.
  void TransitionTo(JobState next, std::string timestamp);
  const StageRecord* stage(Stage s) const;
};

std::string JobToJson(const GenerationJob& job);
// ParseError on malformed input.
GenerationJob JobFromJson(std::string_view json);

std::string UtcTimestamp();

}  // namespace propforge

#endif  // PROPFORGE_PIPELINE_JOB_H_
