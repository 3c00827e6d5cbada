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

#include "propforge/pipeline/http_backend.h"

#include <httplib.h>

#include <nlohmann/json.hpp>

#include "propforge/common/base64.h"
#include "propforge/common/error.h"
#include "propforge/pipeline/mock_backend.h"

namespace propforge {
namespace {

using nlohmann::json;

std::string FieldOrReject(const json& body, const char* field) {
  if (!body.is_object() || !body.contains(field) || !body[field].is_string()) {
    Throw(ErrorCode::kInvalidArtifact, std::string("response lacks string field '") + field + "'");
  }
  return body[field].get<std::string>();
}

Bytes DecodeField(const std::string& response, const char* field) {
  json body;
  try {
    body = json::parse(response);
  } catch (const json::exception&) {
    Throw(ErrorCode::kInvalidArtifact, "response is not JSON");
  }
  try {
    return Base64Decode(FieldOrReject(body, field));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kInvalidArtifact) throw;
    Throw(ErrorCode::kInvalidArtifact, std::string("field '") + field + "' is not base64");
  }
}

std::chrono::microseconds ToMicros(double seconds) {
  return std::chrono::microseconds(static_cast<long long>(seconds * 1e6));
}

}  // namespace

HttpStageClient::HttpStageClient(const std::string& url, double timeout_s, std::string token)
    : url_(url), timeout_s_(timeout_s), token_(std::move(token)) {
  const std::string scheme = "http://";
  if (url.rfind(scheme, 0) != 0) {
    Throw(ErrorCode::kInvalidArgument, "only http:// endpoints are supported: " + url);
  }
  const std::size_t slash = url.find('/', scheme.size());
  origin_ = url.substr(0, slash);
  path_ = slash == std::string::npos ? "/" : url.substr(slash);
  if (origin_.size() == scheme.size()) Throw(ErrorCode::kInvalidArgument, "endpoint lacks a host: " + url);
}

HttpStageClient::~HttpStageClient() = default;

std::string HttpStageClient::PostJson(const std::string& body) const {
  httplib::Client client(origin_);
  client.set_connection_timeout(ToMicros(timeout_s_));
  client.set_read_timeout(ToMicros(timeout_s_));
  client.set_write_timeout(ToMicros(timeout_s_));
  httplib::Headers headers;
  if (!token_.empty()) headers.emplace("Authorization", "Bearer " + token_);
  const httplib::Result res = client.Post(path_, headers, body, "application/json");
  if (!res) {
    Throw(ErrorCode::kTransportError, url_ + ": " + httplib::to_string(res.error()));
  }
  const int status = res->status;
  if (status == 200) return res->body;
  const std::string msg = url_ + " answered HTTP " + std::to_string(status);
  if (status == 408 || status == 429 || status >= 500) Throw(ErrorCode::kTransportError, msg);
  Throw(ErrorCode::kBackendRejection, msg);
}

Bytes HttpTextToImage(const HttpStageClient& client, const std::string& prompt,
                      const Bytes& depth_png, std::uint64_t seed) {
  const json body = {{"prompt", prompt}, {"depth_png", Base64Encode(depth_png)}, {"seed", seed}};
  return DecodeField(client.PostJson(body.dump()), "image_png");
}

Bytes HttpRemoveBackground(const HttpStageClient& client, const Bytes& image_png) {
  const json body = {{"image_png", Base64Encode(image_png)}};
  return DecodeField(client.PostJson(body.dump()), "image_png");
}

Bytes HttpImageToMesh(const HttpStageClient& client, const Bytes& image_png) {
  const json body = {{"image_png", Base64Encode(image_png)}};
  return DecodeField(client.PostJson(body.dump()), "glb");
}

MockHttpServer::MockHttpServer(MockOptions options, std::string required_token)
    : options_(options), required_token_(std::move(required_token)) {}

MockHttpServer::~MockHttpServer() { Stop(); }

void MockHttpServer::Install() {
  server_ = std::make_unique<httplib::Server>();
  // Wraps a stage: parses the request, maps library errors to statuses.
  auto handler = [this](auto stage) {
    return [this, stage](const httplib::Request& req, httplib::Response& res) {
      ++request_count_;
      if (const int forced = forced_status_.load(); forced != 0) {
        res.status = forced;
        return;
      }
      if (!required_token_.empty() &&
          req.get_header_value("Authorization") != "Bearer " + required_token_) {
        res.status = 401;
        return;
      }
      try {
        const json in = json::parse(req.body);
        res.set_content(stage(in).dump(), "application/json");
      } catch (const json::exception& e) {
        res.status = 400;
        res.set_content(e.what(), "text/plain");
      } catch (const Error& e) {
        res.status = 422;
        res.set_content(e.what(), "text/plain");
      }
    };
  };
  server_->Post("/t2i", handler([](const json& in) {
    const Bytes image = mock::TextToImage(FieldOrReject(in, "prompt"),
                                          Base64Decode(FieldOrReject(in, "depth_png")),
                                          in.value("seed", std::uint64_t{0}));
    return json{{"image_png", Base64Encode(image)}};
  }));
  server_->Post("/remove-background", handler([](const json& in) {
    const Bytes image = mock::RemoveBackground(Base64Decode(FieldOrReject(in, "image_png")));
    return json{{"image_png", Base64Encode(image)}};
  }));
  server_->Post("/img2mesh", handler([this](const json& in) {
    const Bytes glb = mock::ImageToMesh(Base64Decode(FieldOrReject(in, "image_png")), options_);
    return json{{"glb", Base64Encode(glb)}};
  }));
}

int MockHttpServer::Start(const std::string& host, int port) {
  Install();
  int bound = -1;
  if (port == 0) {
    bound = server_->bind_to_any_port(host);
  } else if (server_->bind_to_port(host, port)) {
    bound = port;
  }
  if (bound < 0) Throw(ErrorCode::kTransportError, "cannot bind " + host + ":" + std::to_string(port));
  thread_ = std::thread([this] { server_->listen_after_bind(); });
  server_->wait_until_ready();
  return bound;
}

void MockHttpServer::Serve(const std::string& host, int port) {
  Install();
  if (!server_->listen(host, port)) {
    Throw(ErrorCode::kTransportError, "cannot listen on " + host + ":" + std::to_string(port));
  }
}

void MockHttpServer::Stop() {
  if (server_) server_->stop();
  if (thread_.joinable()) thread_.join();
}

}  // namespace propforge
