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

#include "propforge/pipeline/backend.h"

#include <cstdlib>

#include "propforge/common/error.h"
#include "propforge/pipeline/http_backend.h"
#include "propforge/pipeline/mock_backend.h"

namespace propforge {
namespace {

bool IsMock(const std::string& endpoint) { return endpoint == kMockEndpoint; }

std::string TokenFromEnv() {
  const char* token = std::getenv(kApiTokenEnvVar);
  return token ? token : "";
}

class CompositeBackend : public Backend {
 public:
  explicit CompositeBackend(const BackendConfig& config) : config_(config), mock_(config.mock) {
    const std::string token = TokenFromEnv();
    if (!IsMock(config.t2i_endpoint)) {
      t2i_ = std::make_unique<HttpStageClient>(config.t2i_endpoint, config.timeout_s, token);
    }
    if (!IsMock(config.bg_removal_endpoint) && config.bg_removal_endpoint != kBuiltinEndpoint) {
      bg_ = std::make_unique<HttpStageClient>(config.bg_removal_endpoint, config.timeout_s, token);
    }
    if (!IsMock(config.img2mesh_endpoint)) {
      mesh_ = std::make_unique<HttpStageClient>(config.img2mesh_endpoint, config.timeout_s, token);
    }
  }

  std::string StageBackendId(Stage stage) const override {
    switch (stage) {
      case Stage::kTextToImage:
        return t2i_ ? "http:" + t2i_->url() : mock_.StageBackendId(stage);
      case Stage::kBackgroundRemoval:
        if (config_.bg_removal_endpoint == kBuiltinEndpoint) return "builtin/depth-mask";
        return bg_ ? "http:" + bg_->url() : mock_.StageBackendId(stage);
      case Stage::kImageToMesh:
        return mesh_ ? "http:" + mesh_->url() : mock_.StageBackendId(stage);
      case Stage::kAnchoring:
        return mock_.StageBackendId(stage);
    }
    return "unknown";
  }

  Bytes TextToImage(const std::string& prompt, const Bytes& depth_png,
                    std::uint64_t seed) override {
    if (t2i_) return HttpTextToImage(*t2i_, prompt, depth_png, seed);
    return mock_.TextToImage(prompt, depth_png, seed);
  }

  Bytes RemoveBackground(const Bytes& image_png, const Bytes& depth_png) override {
    if (config_.bg_removal_endpoint == kBuiltinEndpoint) {
      return mock::RemoveBackgroundWithDepth(image_png, depth_png);
    }
    if (bg_) return HttpRemoveBackground(*bg_, image_png);
    return mock_.RemoveBackground(image_png, depth_png);
  }

  Bytes ImageToMesh(const Bytes& image_png) override {
    if (mesh_) return HttpImageToMesh(*mesh_, image_png);
    return mock_.ImageToMesh(image_png);
  }

 private:
  BackendConfig config_;
  MockBackend mock_;
  std::unique_ptr<HttpStageClient> t2i_;
  std::unique_ptr<HttpStageClient> bg_;
  std::unique_ptr<HttpStageClient> mesh_;
};

}  // namespace

std::string Backend::CompositeId() const {
  return StageBackendId(Stage::kTextToImage) + "|" + StageBackendId(Stage::kBackgroundRemoval) +
         "|" + StageBackendId(Stage::kImageToMesh);
}

void BackendConfig::Validate() const {
  if (!(timeout_s > 0.0)) Throw(ErrorCode::kInvalidArgument, "timeout must be positive");
  if (max_retries < 0) Throw(ErrorCode::kInvalidArgument, "max_retries must be >= 0");
  if (!(backoff_base_s >= 0.0)) Throw(ErrorCode::kInvalidArgument, "backoff base must be >= 0");
  if (t2i_endpoint.empty() || bg_removal_endpoint.empty() || img2mesh_endpoint.empty()) {
    Throw(ErrorCode::kInvalidArgument, "every stage needs an endpoint or \"mock\"");
  }
}

std::unique_ptr<Backend> MakeBackend(const BackendConfig& config) {
  config.Validate();
  return std::make_unique<CompositeBackend>(config);
}

}  // namespace propforge
