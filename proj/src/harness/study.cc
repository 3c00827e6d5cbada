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

#include "propforge/harness/study.h"

#include <atomic>
#include <memory>
#include <mutex>
#include <sstream>
#include <thread>

#include "propforge/common/error.h"
#include "propforge/common/file_util.h"
#include "propforge/common/png.h"
#include "propforge/common/random.h"
#include "propforge/harness/dataset.h"
#include "propforge/mesh/mesh_io.h"
#include "propforge/metrics/metrics.h"
#include "propforge/pipeline/runner.h"
#include "propforge/prompt/prompt.h"

namespace propforge {
namespace {

struct PreparedObject {
  std::string id;
  TriangleMesh normalized;
  Bytes depth_png;
  Bytes capture_png;
  std::vector<Vec3> visible;  // visible source surface, subsampled
  Aabb box;
};

struct PairTask {
  const PreparedObject* object = nullptr;
  std::size_t prompt_index = 0;
  const PromptSpec* prompt = nullptr;
  std::uint64_t seed = 0;
  std::string job_id;
};

struct PairOutcome {
  bool done = false;
  bool ok = false;
  PairRow row;
  PairFailure failure;
};

std::string Num(double v) {
  std::ostringstream out;
  out.precision(17);
  out << v;
  return out.str();
}

std::vector<Vec3> Strided(const std::vector<Vec3>& points, std::size_t n) {
  if (points.size() <= n) return points;
  std::vector<Vec3> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(points[i * points.size() / n]);
  return out;
}

std::map<std::string, std::string> ConfigEcho(const StudyManifest& m, std::size_t objects,
                                              std::size_t prompts) {
  const CameraPose& c = m.camera;
  return {
      {"seed", std::to_string(m.seed)},
      {"objects", std::to_string(objects)},
      {"prompts", std::to_string(prompts)},
      {"samples_per_mesh", std::to_string(m.samples_per_mesh)},
      {"metric.convention", std::string(kChamferConvention)},
      {"normalization", "surface centroid, max vertex distance = 1"},
      {"icp.max_iterations", std::to_string(m.icp.max_iterations)},
      {"icp.convergence_tol", Num(m.icp.convergence_tol)},
      {"icp.restarts", std::to_string(m.icp.restarts)},
      {"icp.coarse_samples", std::to_string(m.icp.coarse_samples)},
      {"camera.elevation_deg", Num(c.elevation_deg)},
      {"camera.azimuth_deg", Num(c.azimuth_deg)},
      {"camera.distance", Num(c.distance)},
      {"camera.projection",
       c.projection.kind == ProjectionKind::kPerspective ? "perspective" : "orthographic"},
      {"camera.fov_deg", Num(c.projection.fov_deg)},
      {"camera.half_extent", Num(c.projection.half_extent)},
      {"render.width", std::to_string(m.render_width)},
      {"render.height", std::to_string(m.render_height)},
      {"render.near_is_bright", m.render.near_is_bright ? "true" : "false"},
      {"render.far_value", Num(m.render.far_value)},
      {"backend.t2i", m.backend.t2i_endpoint},
      {"backend.bg_removal", m.backend.bg_removal_endpoint},
      {"backend.img2mesh", m.backend.img2mesh_endpoint},
      {"backend.max_retries", std::to_string(m.backend.max_retries)},
      {"backend.backoff_base_s", Num(m.backend.backoff_base_s)},
      {"backend.timeout_s", Num(m.backend.timeout_s)},
      {"mock.relief", Num(m.backend.mock.relief)},
      {"mock.pixel_stride", std::to_string(m.backend.mock.pixel_stride)},
      {"mock.max_depth_jump", Num(m.backend.mock.max_depth_jump)},
      {"anchor.scale", m.backend.anchor.uniform_scale ? "uniform" : "per_axis"},
      {"evaluated_mesh", "reconstruction before anchoring"},
  };
}

std::vector<std::pair<std::string, TriangleMesh>> LoadObjects(const StudyManifest& m,
                                                              std::vector<std::string>* warnings) {
  std::vector<std::pair<std::string, TriangleMesh>> out;
  if (!m.objects.empty()) {
    for (const StudyObject& o : m.objects) {
      try {
        out.emplace_back(o.id, LoadMesh(o.mesh));
      } catch (const Error& e) {
        Throw(ErrorCode::kManifestError, "object " + o.id + ": " + e.what());
      }
    }
    return out;
  }
  DatasetIngest ingest;
  try {
    ingest = IngestDataset(m.dataset_dir);
  } catch (const Error& e) {
    Throw(ErrorCode::kManifestError, e.what());
  }
  if (warnings) {
    for (const SkippedFile& s : ingest.skipped) {
      warnings->push_back("skipped " + s.path.string() + ": " + s.reason);
    }
    for (const std::string& w : ingest.warnings) warnings->push_back(w);
  }
  for (DatasetEntry& e : ingest.entries) out.emplace_back(e.id, std::move(e.mesh));
  return out;
}

PreparedObject Prepare(const std::string& id, const TriangleMesh& mesh, const StudyManifest& m) {
  PreparedObject p;
  p.id = id;
  try {
    p.normalized = NormalizeUnitSphere(mesh).mesh;
  } catch (const Error& e) {
    Throw(ErrorCode::kManifestError, "object " + id + ": " + e.what());
  }
  const DepthRender render = RenderDepth(p.normalized, m.camera, m.render_width, m.render_height, m.render);
  if (render.covered_pixels == 0) {
    Throw(ErrorCode::kManifestError, "object " + id + " is not visible from the study camera");
  }
  p.depth_png = EncodeDepthPng(render.image);
  p.capture_png = CaptureFromDepth(render.image);
  p.visible = Strided(VisibleSurfacePoints(render, m.camera), m.samples_per_mesh);
  p.box = BoundingBox(p.normalized);
  return p;
}

void SavePairFile(const std::filesystem::path& path, const PairOutcome& outcome) {
  StudyReport single;
  if (outcome.ok) {
    single.rows.push_back(outcome.row);
  } else {
    single.failures.push_back(outcome.failure);
  }
  FinalizeReport(single);
  WriteFileAtomic(path, EmitReport(single, ReportFormat::kJson));
}

std::optional<PairOutcome> LoadPairFile(const std::filesystem::path& path) {
  if (!std::filesystem::exists(path)) return std::nullopt;
  try {
    const StudyReport single = ParseReportJson(ReadFileText(path));
    PairOutcome o;
    o.done = true;
    if (single.rows.size() == 1) {
      o.ok = true;
      o.row = single.rows[0];
      return o;
    }
    if (single.failures.size() == 1) {
      o.failure = single.failures[0];
      return o;
    }
  } catch (const Error&) {
  }
  return std::nullopt;  // unreadable record: recompute the pair
}

PairOutcome Evaluate(const PairTask& task, PipelineRunner& runner, const StudyManifest& m) {
  PairOutcome out;
  out.done = true;
  out.failure = {task.object->id, task.prompt_index, task.job_id, "", ""};
  try {
    if (!runner.jobs().Exists(task.job_id)) {
      JobRequest req;
      req.id = task.job_id;
      req.rgb_png = task.object->capture_png;
      req.depth_png = task.object->depth_png;
      req.prompt = *task.prompt;
      req.seed = task.seed;
      req.reference_box = task.object->box;
      req.metadata = {{"camera.elevation_deg", Num(m.camera.elevation_deg)},
                      {"camera.azimuth_deg", Num(m.camera.azimuth_deg)},
                      {"camera.distance", Num(m.camera.distance)},
                      {"object_id", task.object->id}};
      runner.Submit(req);
    }
    const GenerationJob job = runner.Run(task.job_id);
    if (job.state == JobState::kFailed) {
      out.failure.stage = job.failed_stage ? std::string(StageName(*job.failed_stage)) : "";
      out.failure.reason = job.failure_reason;
      return out;
    }
    const TriangleMesh generated = LoadStageMesh(runner.assets(), job, Stage::kImageToMesh);
    IcpParams icp = m.icp;
    icp.seed = task.seed;
    const SimilarityReport full = EvaluatePair(task.object->normalized, generated, icp, m.samples_per_mesh);
    const PointCloud candidate = SampleSurface(generated, m.samples_per_mesh, DeriveSeed(task.seed, 3));
    const SimilarityReport visible = EvaluateClouds(task.object->visible, candidate.points, icp);

    PairRow& r = out.row;
    r.object_id = task.object->id;
    r.prompt_index = task.prompt_index;
    r.prompt = task.prompt->text;
    r.condition = std::string(PromptConditionName(task.prompt->condition.value_or(PromptCondition::kGeneral)));
    r.template_kind = std::string(TemplateKindName(task.prompt->tmpl.kind));
    r.job_id = task.job_id;
    r.seed = task.seed;
    r.generated_mesh = job.stage(Stage::kImageToMesh)->artifact;
    r.chamfer = full.chamfer;
    r.hausdorff = full.hausdorff;
    r.visible_chamfer = visible.chamfer;
    r.visible_hausdorff = visible.hausdorff;
    r.sample_count = full.sample_count;
    r.restart_index = full.alignment.restart_index;
    r.alignment_rms = full.alignment.rms;
    out.ok = true;
  } catch (const Error& e) {
    if (out.failure.stage.empty()) out.failure.stage = "evaluation";
    out.failure.reason = e.what();
  }
  return out;
}

}  // namespace

Bytes CaptureFromDepth(const DepthImage& depth) {
  const Image8 gray = DecodePng(EncodeDepthPng(depth));
  Image8 rgb;
  rgb.width = gray.width;
  rgb.height = gray.height;
  rgb.channels = 3;
  rgb.pixels.reserve(gray.pixels.size() * 3);
  for (std::uint8_t v : gray.pixels) rgb.pixels.insert(rgb.pixels.end(), {v, v, v});
  return EncodePng(rgb);
}

StudyReport RunStudy(const StudyManifest& manifest, const std::filesystem::path& out_dir,
                     const StudyOptions& options) {
  manifest.Validate();
  std::vector<std::string> prompt_warnings;
  std::vector<PromptSpec> prompts;
  try {
    prompts = LoadPromptSet(manifest.prompts, &prompt_warnings);
  } catch (const Error& e) {
    Throw(ErrorCode::kManifestError, std::string("prompts: ") + e.what());
  }
  if (options.warnings) {
    options.warnings->insert(options.warnings->end(), prompt_warnings.begin(), prompt_warnings.end());
  }
  const auto objects = LoadObjects(manifest, options.warnings);
  std::vector<std::string> ids;
  for (const auto& [id, mesh] : objects) ids.push_back(id);
  try {
    PlanGenerations(prompts, ids);
  } catch (const Error& e) {
    Throw(ErrorCode::kManifestError, e.what());
  }

  std::vector<PreparedObject> prepared;
  prepared.reserve(objects.size());
  for (const auto& [id, mesh] : objects) prepared.push_back(Prepare(id, mesh, manifest));

  std::vector<PairTask> tasks;
  for (const PreparedObject& obj : prepared) {
    for (std::size_t i = 0; i < prompts.size(); ++i) {
      const PromptSpec& p = prompts[i];
      if (p.condition == PromptCondition::kObjectSpecific && p.object_id != obj.id) continue;
      PairTask t;
      t.object = &obj;
      t.prompt_index = i;
      t.prompt = &p;
      t.seed = DeriveSeed(manifest.seed, Fnv1a64(obj.id + '\x1f' + std::to_string(i)));
      ContentHasher h;
      h.Add(obj.id).Add(static_cast<std::uint64_t>(i)).Add(p.text).Add(t.seed);
      t.job_id = "pair-" + h.HexDigest().substr(0, 24);
      tasks.push_back(t);
    }
  }

  std::unique_ptr<Backend> owned;
  Backend* backend = options.backend;
  if (!backend) {
    owned = MakeBackend(manifest.backend);
    backend = owned.get();
  }
  PipelineRunner runner(out_dir / "store", *backend, manifest.backend);
  const std::filesystem::path pair_dir = out_dir / "pairs";

  std::vector<PairOutcome> outcomes(tasks.size());
  std::mutex claim_mutex;
  std::size_t next_task = 0;
  std::size_t new_pairs = 0;
  bool truncated = false;
  auto worker = [&] {
    for (;;) {
      std::size_t i;
      {
        std::lock_guard<std::mutex> lock(claim_mutex);
        for (;;) {
          if (next_task >= tasks.size()) return;
          i = next_task++;
          if (auto saved = LoadPairFile(pair_dir / (tasks[i].job_id + ".json"))) {
            outcomes[i] = *saved;
            continue;
          }
          if (new_pairs >= options.max_new_pairs) {
            truncated = true;
            continue;
          }
          ++new_pairs;
          break;
        }
      }
      outcomes[i] = Evaluate(tasks[i], runner, manifest);
      SavePairFile(pair_dir / (tasks[i].job_id + ".json"), outcomes[i]);
    }
  };
  int threads = options.threads > 0 ? options.threads : manifest.threads;
  if (threads <= 0) threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  std::vector<std::thread> pool;
  for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (std::thread& t : pool) t.join();

  StudyReport report;
  report.planned_pairs = tasks.size();
  report.complete = !truncated;
  report.config = ConfigEcho(manifest, prepared.size(), prompts.size());
  for (const PairOutcome& o : outcomes) {
    if (!o.done) continue;
    if (o.ok) {
      report.rows.push_back(o.row);
    } else {
      report.failures.push_back(o.failure);
    }
  }
  FinalizeReport(report);
  return report;
}

}  // namespace propforge
