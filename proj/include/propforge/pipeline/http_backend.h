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

#ifndef PROPFORGE_PIPELINE_HTTP_BACKEND_H_
#define PROPFORGE_PIPELINE_HTTP_BACKEND_H_

#include <atomic>
#include <memory>
#include <string>
#include <thread>

#include "propforge/pipeline/backend.h"

namespace httplib {
class Server;
}

namespace propforge {

// Bearer token sent to remote stage endpoints when set.
inline constexpr char kApiTokenEnvVar[] = "PROPFORGE_API_TOKEN";

// POSTs base64-JSON bodies to one endpoint URL (http://host[:port]/path):
//   t2i       {prompt, depth_png, seed} -> {image_png}
//   bg        {image_png}               -> {image_png}
//   img2mesh  {image_png}               -> {glb}
// Connection failures, timeouts, 408, 429 and 5xx raise TransportError;
// other non-200 statuses raise BackendRejection; an unusable body raises
// InvalidArtifact.
class HttpStageClient {
 public:
  HttpStageClient(const std::string& url, double timeout_s, std::string token);
  ~HttpStageClient();

  // Returns the response body of a 200 reply.
  std::string PostJson(const std::string& body) const;
  const std::string& url() const { return url_; }

 private:
  std::string url_;
  std::string origin_;
  std::string path_;
  double timeout_s_;
  std::string token_;
};

Bytes HttpTextToImage(const HttpStageClient& client, const std::string& prompt,
                      const Bytes& depth_png, std::uint64_t seed);
Bytes HttpRemoveBackground(const HttpStageClient& client, const Bytes& image_png);
Bytes HttpImageToMesh(const HttpStageClient& client, const Bytes& image_png);

// Serves the mock stages over HTTP at /t2i, /remove-background and
// /img2mesh.
class MockHttpServer {
 public:
  explicit MockHttpServer(MockOptions options = {}, std::string required_token = "");
  ~MockHttpServer();

  // Binds and serves on a background thread; port 0 picks a free port.
  // Returns the bound port.
  int Start(const std::string& host, int port);
  // Blocks in the calling thread until Stop() is called elsewhere.
  void Serve(const std::string& host, int port);
  void Stop();
  // Every request answers with this status while nonzero (test hook).
  void set_forced_status(int status) { forced_status_ = status; }
  int request_count() const { return request_count_; }

 private:
  void Install();

  MockOptions options_;
  std::string required_token_;
  std::unique_ptr<httplib::Server> server_;
  std::thread thread_;
  std::atomic<int> forced_status_{0};
  std::atomic<int> request_count_{0};
};

}  // namespace propforge

#endif  // PROPFORGE_PIPELINE_HTTP_BACKEND_H_
