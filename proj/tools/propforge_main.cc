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

// Command-line front end for the propforge libraries.

#include <csignal>
#include <cstdlib>
#include <iostream>
#include <limits>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "propforge/common/csv.h"
#include "propforge/common/error.h"
#include "propforge/common/file_util.h"
#include "propforge/harness/manifest.h"
#include "propforge/harness/report.h"
#include "propforge/harness/study.h"
#include "propforge/mesh/fixtures.h"
#include "propforge/mesh/mesh_io.h"
#include "propforge/metrics/metrics.h"
#include "propforge/pipeline/http_backend.h"
#include "propforge/pipeline/runner.h"
#include "propforge/prompt/prompt.h"
#include "propforge/render/depth_render.h"
#include "propforge/stats/stats.h"

namespace pf = propforge;
using nlohmann::ordered_json;

namespace {

int RenderDepthCommand(const std::string& mesh_path, const std::string& out, int width, int height,
                       double elevation, double azimuth, double distance, double fov,
                       const std::string& raw_out) {
  pf::CameraPose camera = pf::StandardViewpoint();
  camera.elevation_deg = elevation;
  camera.azimuth_deg = azimuth;
  camera.distance = distance;
  camera.projection.fov_deg = fov;
  const pf::TriangleMesh mesh = pf::NormalizeUnitSphere(pf::LoadMesh(mesh_path)).mesh;
  const pf::DepthRender render = pf::RenderDepth(mesh, camera, width, height);
  pf::WriteFileAtomic(out, pf::EncodeDepthPng(render.image));
  if (!raw_out.empty()) pf::WriteFileAtomic(raw_out, pf::EncodeRawDepth(render.image));
  std::cout << "wrote " << out << " (" << width << "x" << height << ", "
            << render.covered_pixels << " covered pixels)\n";
  if (render.degenerate_camera) {
    std::cerr << "warning: nothing in front of the camera; image is all background\n";
    return 3;
  }
  return 0;
}

int EvalPairCommand(const std::string& original, const std::string& generated, std::size_t samples,
                    int restarts, std::uint64_t seed, const std::string& out) {
  pf::IcpParams params;
  params.restarts = restarts;
  params.seed = seed;
  const pf::SimilarityReport r =
      pf::EvaluatePair(pf::LoadMesh(original), pf::LoadMesh(generated), params, samples);
  ordered_json j = {{"chamfer", r.chamfer},
                    {"hausdorff", r.hausdorff},
                    {"sample_count", r.sample_count},
                    {"seed", r.seed},
                    {"convention", pf::kChamferConvention},
                    {"alignment",
                     {{"rms", r.alignment.rms},
                      {"restart_index", r.alignment.restart_index},
                      {"iterations", r.alignment.iterations_used}}}};
  pf::WriteFileAtomic(out, j.dump(2) + "\n");
  std::cout << "chamfer " << r.chamfer << "  hausdorff " << r.hausdorff << "\n";
  return 0;
}

int RunStudyCommand(const std::string& manifest_path, const std::string& out_dir,
                    const std::string& backend, std::optional<std::uint64_t> seed,
                    std::optional<std::size_t> samples, int threads, std::size_t max_pairs) {
  pf::StudyManifest m = pf::LoadStudyManifest(manifest_path);
  if (backend == "mock") {
    m.backend.t2i_endpoint = m.backend.bg_removal_endpoint = m.backend.img2mesh_endpoint =
        pf::kMockEndpoint;
  }
  if (seed) {
    m.seed = *seed;
    m.icp.seed = *seed;
  }
  if (samples) m.samples_per_mesh = *samples;
  std::vector<std::string> warnings;
  pf::StudyOptions options;
  options.threads = threads;
  options.max_new_pairs = max_pairs;
  options.warnings = &warnings;
  const pf::StudyReport report = pf::RunStudy(m, out_dir, options);
  for (const std::string& w : warnings) std::cerr << "warning: " << w << "\n";
  const std::filesystem::path dir(out_dir);
  pf::WriteFileAtomic(dir / "report.json", pf::EmitReport(report, pf::ReportFormat::kJson));
  pf::WriteFileAtomic(dir / "report.csv", pf::EmitReport(report, pf::ReportFormat::kCsv));
  std::cout << "pairs: " << report.rows.size() << " completed, " << report.failures.size()
            << " failed, " << report.planned_pairs << " planned"
            << (report.complete ? "" : " (incomplete)") << "\n"
            << "mean chamfer " << report.overall.mean_chamfer << ", mean hausdorff "
            << report.overall.mean_hausdorff << " (reference " << pf::kReferenceChamfer << " / "
            << pf::kReferenceHausdorff << " over " << pf::kReferencePairs << " live pairs)\n";
  return report.failures.empty() ? 0 : 4;
}

int KappaCommand(const std::string& ratings_path) {
  const auto records = pf::ParseRatings(pf::ReadFileText(ratings_path));
  const char* names[] = {"q1", "q2", "q3"};
  for (int q = 0; q < 3; ++q) {
    pf::AgreementStats s;
    try {
      s = pf::FleissKappa(pf::BuildRatingMatrix(records, q));
    } catch (const pf::Error& e) {
      // One question with a single category should not hide the others.
      if (e.code() != pf::ErrorCode::kDegenerateMarginals) throw;
      std::cout << names[q] << ": kappa undefined (" << e.what() << ")\n";
      continue;
    }
    std::cout << names[q] << ": kappa " << s.kappa << " 95% CI [" << s.ci_low << ", " << s.ci_high
              << "] (se0 " << s.standard_error << "), aligned " << s.aligned_count << "/"
              << s.total_count << " = " << 100.0 * s.aligned_fraction << "%\n";
  }
  return 0;
}

int SuccessRatesCommand(const std::string& ratings_path) {
  const auto items = pf::ReconcileMajority(pf::ParseRatings(pf::ReadFileText(ratings_path)));
  const pf::SuccessSummary s = pf::SuccessRates(items);
  const char* names[] = {"q1", "q2", "q3"};
  for (int q = 0; q < 3; ++q) {
    const auto& r = s.questions[q];
    std::cout << names[q] << ": custom " << 100.0 * r.custom.fraction << "% (" << r.custom.successes
              << "/" << r.custom.total << "), general " << 100.0 * r.general.fraction << "% ("
              << r.general.successes << "/" << r.general.total << "), overall "
              << 100.0 * r.overall.fraction << "%\n";
  }
  return 0;
}

int WilcoxonCommand(const std::string& pairs_path, bool no_continuity) {
  const pf::CsvDocument doc = pf::ParseCsv(pf::ReadFileText(pairs_path));
  std::vector<double> a;
  std::vector<double> b;
  for (std::size_t i = 0; i < doc.rows.size(); ++i) {
    const auto& f = doc.rows[i].fields;
    if (f.size() != 2) pf::Throw(pf::ErrorCode::kParseError, "pairs file needs two columns a,b");
    try {
      a.push_back(std::stod(f[0]));
      b.push_back(std::stod(f[1]));
    } catch (const std::exception&) {
      if (i == 0) continue;  // header
      pf::Throw(pf::ErrorCode::kParseError, "non-numeric value on line " + std::to_string(doc.rows[i].line));
    }
  }
  pf::WilcoxonOptions opts;
  opts.continuity_correction = !no_continuity;
  const pf::WilcoxonResult r = pf::WilcoxonSignedRank(a, b, opts);
  std::cout << "n " << r.n << " (zeros dropped " << r.zeros_dropped << "), W+ " << r.w_plus
            << ", z " << r.z << ", p " << r.p << ", r " << r.r << "\n";
  return 0;
}

int PipelineRunCommand(const std::string& rgb, const std::string& depth, const std::string& prompt,
                       const std::string& backend, const std::string& out_dir,
                       std::uint64_t seed, const std::string& t2i, const std::string& bg,
                       const std::string& img2mesh, const std::string& reference_mesh) {
  pf::BackendConfig config;
  if (backend == "live") {
    if (t2i.empty() || bg.empty() || img2mesh.empty()) {
      pf::Throw(pf::ErrorCode::kInvalidArgument,
                "--backend live needs --t2i, --bg-removal and --img2mesh endpoints");
    }
    config.t2i_endpoint = t2i;
    config.bg_removal_endpoint = bg;
    config.img2mesh_endpoint = img2mesh;
  }
  const auto impl = pf::MakeBackend(config);
  pf::PipelineRunner runner(out_dir, *impl, config);
  pf::PromptSpec spec;
  spec.text = prompt;
  spec.tmpl.kind = pf::ClassifyPrompt(prompt);
  spec.tmpl.noun = prompt;
  std::optional<pf::Aabb> box;
  if (!reference_mesh.empty()) box = pf::BoundingBox(pf::LoadMesh(reference_mesh));
  const std::string id = runner.SubmitFiles(rgb, depth, spec, seed, box);
  const pf::GenerationJob job = runner.Run(id);
  std::cout << pf::JobToJson(job) << "\n";
  if (job.state != pf::JobState::kAnchored) return 4;
  const pf::Bytes reconstructed =
      runner.assets().Get(job.stage(pf::Stage::kImageToMesh)->artifact);
  pf::WriteFileAtomic(std::filesystem::path(out_dir) / "reconstructed.glb", reconstructed);
  const pf::Bytes anchored = runner.assets().Get(job.stage(pf::Stage::kAnchoring)->artifact);
  pf::WriteFileAtomic(std::filesystem::path(out_dir) / "anchored.glb", anchored);
  return 0;
}

pf::MockHttpServer* g_server = nullptr;

int ServeMockCommand(const std::string& host, int port) {
  const char* token = std::getenv(pf::kApiTokenEnvVar);
  pf::MockHttpServer server(pf::MockOptions{}, token ? token : "");
  g_server = &server;
  std::signal(SIGINT, [](int) {
    if (g_server) g_server->Stop();
  });
  std::cout << "serving mock stages on http://" << host << ":" << port
            << " (/t2i, /remove-background, /img2mesh)\n"
            << std::flush;
  server.Serve(host, port);
  return 0;
}

int MakeFixturesCommand(const std::string& out_dir, const std::string& format) {
  for (const auto& [name, mesh] : pf::BundledFixtures()) {
    const std::filesystem::path path = std::filesystem::path(out_dir) / (name + "." + format);
    pf::SaveMesh(path, mesh);
    std::cout << "wrote " << path.string() << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"propforge: prop-guided generation study toolkit"};
  app.require_subcommand(1);
  int status = 0;

  auto* render = app.add_subcommand("render-depth", "Render a normalized depth map of a mesh");
  std::string r_mesh, r_out, r_raw;
  int r_w = pf::kDefaultDepthResolution, r_h = pf::kDefaultDepthResolution;
  const pf::CameraPose standard = pf::StandardViewpoint();
  double r_el = standard.elevation_deg, r_az = standard.azimuth_deg;
  double r_dist = standard.distance, r_fov = standard.projection.fov_deg;
  render->add_option("--mesh", r_mesh, "OBJ or GLB mesh")->required();
  render->add_option("--out", r_out, "Output PNG")->required();
  render->add_option("--width", r_w);
  render->add_option("--height", r_h);
  render->add_option("--elevation", r_el, "Degrees above the ground plane");
  render->add_option("--azimuth", r_az, "Degrees of horizontal rotation");
  render->add_option("--distance", r_dist, "Camera distance in normalized radii");
  render->add_option("--fov", r_fov, "Vertical field of view in degrees");
  render->add_option("--raw", r_raw, "Also write the raw float32 dump here");
  render->callback([&] {
    status = RenderDepthCommand(r_mesh, r_out, r_w, r_h, r_el, r_az, r_dist, r_fov, r_raw);
  });

  auto* eval = app.add_subcommand("eval-pair", "Chamfer/Hausdorff after robust alignment");
  std::string e_orig, e_gen, e_out;
  std::size_t e_samples = pf::kDefaultSampleCount;
  int e_restarts = pf::IcpParams{}.restarts;
  std::uint64_t e_seed = 0;
  eval->add_option("--original", e_orig)->required();
  eval->add_option("--generated", e_gen)->required();
  eval->add_option("--samples", e_samples);
  eval->add_option("--restarts", e_restarts);
  eval->add_option("--seed", e_seed);
  eval->add_option("--out", e_out, "Output JSON")->required();
  eval->callback([&] { status = EvalPairCommand(e_orig, e_gen, e_samples, e_restarts, e_seed, e_out); });

  auto* study = app.add_subcommand("run-study", "Run a generation study from a TOML manifest");
  std::string s_manifest, s_out, s_backend = "mock";
  std::optional<std::uint64_t> s_seed;
  std::optional<std::size_t> s_samples;
  int s_threads = 0;
  std::size_t s_max = std::numeric_limits<std::size_t>::max();
  study->add_option("--manifest", s_manifest)->required();
  study->add_option("--out-dir", s_out)->required();
  study->add_option("--backend", s_backend, "mock forces every stage offline; live uses the manifest")
      ->check(CLI::IsMember({"mock", "live"}));
  study->add_option("--seed", s_seed, "Overrides the manifest seed");
  study->add_option("--samples", s_samples, "Overrides samples_per_mesh");
  study->add_option("--threads", s_threads, "Parallel pairs (0: manifest or hardware)");
  study->add_option("--max-pairs", s_max, "Stop after this many new pairs");
  study->callback([&] {
    status = RunStudyCommand(s_manifest, s_out, s_backend, s_seed, s_samples, s_threads, s_max);
  });

  auto* kappa = app.add_subcommand("kappa", "Fleiss' kappa per question from a ratings CSV");
  std::string k_ratings;
  kappa->add_option("--ratings", k_ratings)->required();
  kappa->callback([&] { status = KappaCommand(k_ratings); });

  auto* rates = app.add_subcommand("success-rates", "Majority-vote success rates per condition");
  std::string sr_ratings;
  rates->add_option("--ratings", sr_ratings)->required();
  rates->callback([&] { status = SuccessRatesCommand(sr_ratings); });

  auto* wil = app.add_subcommand("wilcoxon", "Paired signed-rank test from a two-column CSV");
  std::string w_pairs;
  bool w_nocc = false;
  wil->add_option("--pairs", w_pairs)->required();
  wil->add_flag("--no-continuity", w_nocc, "Report the uncorrected normal approximation");
  wil->callback([&] { status = WilcoxonCommand(w_pairs, w_nocc); });

  auto* pipeline = app.add_subcommand("pipeline", "Generation pipeline");
  pipeline->require_subcommand(1);
  auto* run = pipeline->add_subcommand("run", "Run one job through all stages");
  std::string p_rgb, p_depth, p_prompt, p_backend = "mock", p_out, p_t2i, p_bg, p_mesh, p_ref;
  std::uint64_t p_seed = 0;
  run->add_option("--rgb", p_rgb)->required();
  run->add_option("--depth", p_depth)->required();
  run->add_option("--prompt", p_prompt)->required();
  run->add_option("--backend", p_backend)->check(CLI::IsMember({"mock", "live"}));
  run->add_option("--out-dir", p_out)->required();
  run->add_option("--seed", p_seed);
  run->add_option("--t2i", p_t2i, "Live text-to-image endpoint URL");
  run->add_option("--bg-removal", p_bg, "Live background-removal endpoint URL, or builtin");
  run->add_option("--img2mesh", p_mesh, "Live image-to-mesh endpoint URL");
  run->add_option("--reference-mesh", p_ref, "Runtime reference mesh whose box anchors the result");
  run->callback([&] {
    status = PipelineRunCommand(p_rgb, p_depth, p_prompt, p_backend, p_out, p_seed, p_t2i, p_bg,
                                p_mesh, p_ref);
  });

  auto* serve = app.add_subcommand("serve-mock", "Serve the mock stages over HTTP");
  int v_port = 8080;
  std::string v_host = "127.0.0.1";
  serve->add_option("--port", v_port);
  serve->add_option("--host", v_host);
  serve->callback([&] { status = ServeMockCommand(v_host, v_port); });

  auto* fixtures = app.add_subcommand("make-fixtures", "Write the bundled fixture meshes");
  std::string f_out, f_format = "obj";
  fixtures->add_option("--out-dir", f_out)->required();
  fixtures->add_option("--format", f_format)->check(CLI::IsMember({"obj", "glb"}));
  fixtures->callback([&] { status = MakeFixturesCommand(f_out, f_format); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const pf::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return status;
}
