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

#ifndef PROPFORGE_PIPELINE_RUNNER_H_
#define PROPFORGE_PIPELINE_RUNNER_H_

#include <atomic>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "propforge/pipeline/asset_store.h"
#include "propforge/pipeline/backend.h"
#include "propforge/pipeline/job_store.h"
#include "propforge/prompt/prompt.h"

namespace propforge {

// Called with the backoff delay in seconds before a retry.
using Sleeper = std::function<void(double)>;
void RealSleep(double seconds);

struct JobRequest {
  Bytes rgb_png;
  Bytes depth_png;
  PromptSpec prompt;
  std::uint64_t seed = 0;
  std::optional<Aabb> reference_box;
  std::map<std::string, std::string> metadata;
  // Empty: a fresh unique id is generated.
  std::string id;
};

// Drives jobs through text-to-image, background removal, image-to-mesh and
// anchoring. Stage outputs are cached by a key over (stage, stage backend
// id, input hashes, prompt, seed), so repeated content makes no remote call.
// Transport errors are retried max_retries times with delays
// backoff_base * 2^attempt; other errors fail the job at that stage.
class PipelineRunner {
 public:
  PipelineRunner(std::filesystem::path root, Backend& backend, BackendConfig config,
                 Sleeper sleeper = RealSleep);

  // Validates and stores the inputs, persists the job as Pending.
  // StoreError when an input is not a decodable PNG or the store fails.
  std::string Submit(const JobRequest& request);
  // Reads the inputs from disk first; StoreError if either is unreadable.
  std::string SubmitFiles(const std::filesystem::path& rgb_png,
                          const std::filesystem::path& depth_png, const PromptSpec& prompt,
                          std::uint64_t seed, std::optional<Aabb> reference_box = std::nullopt);

  // Runs the remaining stages of a non-terminal job and returns its
  // terminal record. Stage failures are recorded, not thrown.
  GenerationJob Run(const std::string& id);
  // Runs jobs on up to `threads` workers; results follow the input order.
  std::vector<GenerationJob> RunAll(const std::vector<std::string>& ids, int threads);

  AssetStore& assets() { return assets_; }
  JobStore& jobs() { return jobs_; }
  // Backend invocations made so far, retries included.
  int remote_calls() const { return remote_calls_; }

 private:
  struct StageOutput {
    Bytes data;
    StageRecord record;
  };

  StageOutput RunStage(const std::string& stage_name, const std::string& backend_id,
                       const std::vector<std::string>& key_inputs, const std::string& ext,
                       const std::function<Bytes()>& call,
                       const std::function<void(const Bytes&)>& validate, bool remote = true);

  Backend& backend_;
  BackendConfig config_;
  Sleeper sleeper_;
  AssetStore assets_;
  JobStore jobs_;
  std::atomic<int> remote_calls_{0};
};

// Loads a mesh artifact (GLB) of a finished job stage.
TriangleMesh LoadStageMesh(const AssetStore& assets, const GenerationJob& job, Stage stage);

}  // namespace propforge

#endif  // PROPFORGE_PIPELINE_RUNNER_H_
