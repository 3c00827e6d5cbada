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

#ifndef PROPFORGE_HARNESS_STUDY_H_
#define PROPFORGE_HARNESS_STUDY_H_

#include <cstddef>
#include <filesystem>
#include <limits>
#include <string>
#include <vector>

#include "propforge/harness/manifest.h"
#include "propforge/harness/report.h"
#include "propforge/pipeline/backend.h"

namespace propforge {

struct StudyOptions {
  // Stop after evaluating this many new pairs (resume testing, budgets).
  std::size_t max_new_pairs = std::numeric_limits<std::size_t>::max();
  // Overrides manifest.threads when > 0.
  int threads = 0;
  // Replaces the backend built from manifest.backend (tests).
  Backend* backend = nullptr;
  // Skipped dataset files and other notes are appended here.
  std::vector<std::string>* warnings = nullptr;
};

// For every (object, prompt) pair: normalize the object, render its depth
// at the manifest camera, run the pipeline, and evaluate the reconstructed
// mesh against the normalized object (full surface and visible surface).
// Pipeline state and per-pair results live under out_dir, so a rerun skips
// finished pairs. Only manifest errors abort; pair failures are reported.
StudyReport RunStudy(const StudyManifest& manifest, const std::filesystem::path& out_dir,
                     const StudyOptions& options = {});

// Depth-map byte replicated into RGB: the stand-in capture image for
// jobs whose input comes from a render rather than a camera.
Bytes CaptureFromDepth(const DepthImage& depth);

}  // namespace propforge

#endif  // PROPFORGE_HARNESS_STUDY_H_
