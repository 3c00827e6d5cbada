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

#include "propforge/pipeline/runner.h"

#include <chrono>
#include <cmath>
#include <random>
#include <sstream>
#include <thread>

#include "propforge/common/error.h"
#include "propforge/common/file_util.h"
#include "propforge/common/png.h"
#include "propforge/mesh/mesh_io.h"
#include "propforge/pipeline/anchor.h"

namespace propforge {
namespace {

constexpr Stage kStageOrder[] = {Stage::kTextToImage, Stage::kBackgroundRemoval,
                                 Stage::kImageToMesh, Stage::kAnchoring};
constexpr char kReferenceStage[] = "reference_mesh";

Image8 ValidatePng(const Bytes& data) {
  try {
    return DecodePng(data);
  } catch (const Error& e) {
    Throw(ErrorCode::kInvalidArtifact, std::string("stage returned an unusable image: ") + e.what());
  }
}

void ValidateCutout(const Bytes& data) {
  const Image8 image = ValidatePng(data);
  if (image.channels != 2 && image.channels != 4) {
    Throw(ErrorCode::kInvalidArtifact, "background removal returned an image without alpha");
  }
}

TriangleMesh ValidateGlb(const Bytes& data) {
  try {
    TriangleMesh mesh = ParseGlb(data);
    if (mesh.faces.empty()) Throw(ErrorCode::kEmptyMesh, "no faces");
    ValidateMesh(mesh);
    return mesh;
  } catch (const Error& e) {
    Throw(ErrorCode::kInvalidArtifact, std::string("reconstruction returned an unusable mesh: ") +
                                           e.what());
  }
}

std::string FormatBox(const Aabb& box) {
  std::ostringstream out;
  out.precision(17);
  for (int a = 0; a < 3; ++a) out << box.min[a] << ',';
  for (int a = 0; a < 3; ++a) out << box.max[a] << ',';
  return out.str();
}

std::string FreshJobId() {
  static std::atomic<std::uint64_t> counter{0};
  static const std::uint64_t salt = std::random_device{}();
  ContentHasher h;
  h.Add(salt).Add(counter++).Add(UtcTimestamp());
  return "job-" + h.HexDigest().substr(0, 20);
}

Bytes RequirePng(const Bytes& data, const char* what) {
  try {
    DecodePng(data);
  } catch (const Error& e) {
    Throw(ErrorCode::kStoreError, std::string(what) + " is not a readable PNG: " + e.what());
  }
  return data;
}

}  // namespace

void RealSleep(double seconds) {
  if (seconds > 0.0) std::this_thread::sleep_for(std::chrono::duration<double>(seconds));
}

PipelineRunner::PipelineRunner(std::filesystem::path root, Backend& backend, BackendConfig config,
                               Sleeper sleeper)
    : backend_(backend),
      config_(std::move(config)),
      sleeper_(std::move(sleeper)),
      assets_(root),
      jobs_(root) {
  config_.Validate();
}

std::string PipelineRunner::Submit(const JobRequest& request) {
  if (request.prompt.text.empty()) Throw(ErrorCode::kInvalidArgument, "prompt must be nonempty");
  RequirePng(request.rgb_png, "RGB input");
  RequirePng(request.depth_png, "depth input");

  GenerationJob job;
  job.id = request.id.empty() ? FreshJobId() : request.id;
  job.prompt_text = request.prompt.text;
  job.template_kind = request.prompt.tmpl.kind;
  job.condition = request.prompt.condition;
  job.object_id = request.prompt.object_id;
  job.seed = request.seed;
  job.input_rgb = assets_.Put(request.rgb_png, "png");
  job.input_depth = assets_.Put(request.depth_png, "png");
  job.reference_box = request.reference_box;
  job.backend = backend_.CompositeId();
  job.metadata = request.metadata;
  job.history.push_back({JobState::kPending, UtcTimestamp()});
  jobs_.Create(job);
  return job.id;
}

std::string PipelineRunner::SubmitFiles(const std::filesystem::path& rgb_png,
                                        const std::filesystem::path& depth_png,
                                        const PromptSpec& prompt, std::uint64_t seed,
                                        std::optional<Aabb> reference_box) {
  JobRequest request;
  request.rgb_png = ReadFileBytes(rgb_png);
  request.depth_png = ReadFileBytes(depth_png);
  request.prompt = prompt;
  request.seed = seed;
  request.reference_box = reference_box;
  return Submit(request);
}

PipelineRunner::StageOutput PipelineRunner::RunStage(
    const std::string& stage_name, const std::string& backend_id,
    const std::vector<std::string>& key_inputs, const std::string& ext,
    const std::function<Bytes()>& call, const std::function<void(const Bytes&)>& validate,
    bool remote) {
  ContentHasher hasher;
  hasher.Add(stage_name).Add(backend_id);
  for (const std::string& input : key_inputs) hasher.Add(input);
  StageOutput out;
  out.record.cache_key = hasher.HexDigest();

  if (const auto cached = assets_.LookupStage(out.record.cache_key)) {
    out.data = assets_.Get(*cached);
    out.record.artifact = *cached;
    out.record.cache_hit = true;
    return out;
  }

  for (int attempt = 0;; ++attempt) {
    if (remote) {
      ++out.record.attempts;
      ++remote_calls_;
    }
    try {
      out.data = call();
      break;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kTransportError || attempt >= config_.max_retries) throw;
      sleeper_(config_.backoff_base_s * std::ldexp(1.0, attempt));
    }
  }
  validate(out.data);
  out.record.artifact = assets_.Put(out.data, ext);
  assets_.RecordStage(out.record.cache_key, out.record.artifact);
  return out;
}

GenerationJob PipelineRunner::Run(const std::string& id) {
  GenerationJob job = jobs_.Load(id);
  if (IsTerminal(job.state)) return job;
  const auto started = std::chrono::steady_clock::now();

  auto artifact_of = [&](Stage stage) -> Bytes {
    const StageRecord* rec = job.stage(stage);
    if (!rec) Throw(ErrorCode::kInvalidState, "job " + id + " lacks the " + std::string(StageName(stage)) + " artifact");
    return assets_.Get(rec->artifact);
  };
  auto ref_of = [&](Stage stage) { return job.stage(stage)->artifact; };

  for (Stage stage : kStageOrder) {
    if (static_cast<int>(job.state) > static_cast<int>(stage)) continue;
    try {
      StageOutput out;
      switch (stage) {
        case Stage::kTextToImage: {
          const Bytes depth = assets_.Get(job.input_depth);
          out = RunStage(
              std::string(StageName(stage)), backend_.StageBackendId(stage),
              {job.input_depth, job.prompt_text, std::to_string(job.seed)}, "png",
              [&] { return backend_.TextToImage(job.prompt_text, depth, job.seed); },
              [](const Bytes& b) { ValidatePng(b); });
          break;
        }
        case Stage::kBackgroundRemoval: {
          const Bytes image = artifact_of(Stage::kTextToImage);
          const Bytes depth = assets_.Get(job.input_depth);
          out = RunStage(std::string(StageName(stage)), backend_.StageBackendId(stage),
                         {ref_of(Stage::kTextToImage), job.input_depth}, "png",
                         [&] { return backend_.RemoveBackground(image, depth); }, ValidateCutout);
          break;
        }
        case Stage::kImageToMesh: {
          const Bytes cutout = artifact_of(Stage::kBackgroundRemoval);
          out = RunStage(std::string(StageName(stage)), backend_.StageBackendId(stage),
                         {ref_of(Stage::kBackgroundRemoval)}, "glb",
                         [&] { return backend_.ImageToMesh(cutout); },
                         [](const Bytes& b) { ValidateGlb(b); });
          break;
        }
        case Stage::kAnchoring: {
          const TriangleMesh generated = ValidateGlb(artifact_of(Stage::kImageToMesh));
          Aabb reference;
          if (job.reference_box) {
            reference = *job.reference_box;
          } else {
            // No tracked reference: reconstruct one from the RGB capture.
            const Bytes rgb = assets_.Get(job.input_rgb);
            const StageOutput ref_mesh = RunStage(
                kReferenceStage, backend_.StageBackendId(Stage::kImageToMesh), {job.input_rgb},
                "glb", [&] { return backend_.ImageToMesh(rgb); },
                [](const Bytes& b) { ValidateGlb(b); });
            job = jobs_.Update(id, [&](GenerationJob& j) { j.stages[kReferenceStage] = ref_mesh.record; });
            reference = BoundingBox(ValidateGlb(ref_mesh.data));
          }
          out = RunStage(std::string(StageName(stage)), backend_.StageBackendId(stage),
                         {ref_of(Stage::kImageToMesh), FormatBox(reference),
                          config_.anchor.uniform_scale ? "uniform" : "per_axis"},
                         "glb",
                         [&] {
                           const AnchorTransform anchor =
                               ComputeAnchor(generated, reference, config_.anchor);
                           return WriteGlb(ApplyAnchor(generated, anchor));
                         },
                         [](const Bytes& b) { ValidateGlb(b); }, /*remote=*/false);
          break;
        }
      }
      job = jobs_.Update(id, [&](GenerationJob& j) {
        j.stages[std::string(StageName(stage))] = out.record;
        j.TransitionTo(StateAfter(stage), UtcTimestamp());
      });
    } catch (const Error& e) {
      const double elapsed =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
      return jobs_.Update(id, [&](GenerationJob& j) {
        j.failed_stage = stage;
        j.failure_reason = e.what();
        j.total_seconds += elapsed;
        j.TransitionTo(JobState::kFailed, UtcTimestamp());
      });
    }
  }
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return jobs_.Update(id, [&](GenerationJob& j) { j.total_seconds += elapsed; });
}

std::vector<GenerationJob> PipelineRunner::RunAll(const std::vector<std::string>& ids,
                                                  int threads) {
  std::vector<GenerationJob> results(ids.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < ids.size(); i = next++) results[i] = Run(ids[i]);
  };
  const int n = std::max(1, std::min<int>(threads, static_cast<int>(ids.size())));
  std::vector<std::thread> pool;
  for (int t = 1; t < n; ++t) pool.emplace_back(worker);
  worker();
  for (std::thread& t : pool) t.join();
  return results;
}

TriangleMesh LoadStageMesh(const AssetStore& assets, const GenerationJob& job, Stage stage) {
  const StageRecord* rec = job.stage(stage);
  if (!rec) Throw(ErrorCode::kInvalidState, "job " + job.id + " has no " + std::string(StageName(stage)) + " artifact");
  return ParseGlb(assets.Get(rec->artifact));
}

}  // namespace propforge
