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

#include "propforge/pipeline/job_store.h"

#include <algorithm>
#include <cctype>

#include "propforge/common/error.h"
#include "propforge/common/file_util.h"

namespace propforge {

bool IsValidJobId(const std::string& id) {
  if (id.empty() || id.size() > 128) return false;
  return std::all_of(id.begin(), id.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
  });
}

JobStore::JobStore(std::filesystem::path root) : root_(std::move(root)) {
  std::error_code ec;
  std::filesystem::create_directories(root_ / "jobs", ec);
  if (ec) Throw(ErrorCode::kStoreError, "cannot create job store at " + root_.string());
}

std::filesystem::path JobStore::PathOf(const std::string& id) const {
  if (!IsValidJobId(id)) Throw(ErrorCode::kStoreError, "invalid job id '" + id + "'");
  return root_ / "jobs" / (id + ".json");
}

std::mutex& JobStore::LockFor(const std::string& id) {
  std::lock_guard<std::mutex> guard(table_mutex_);
  auto& slot = locks_[id];
  if (!slot) slot = std::make_unique<std::mutex>();
  return *slot;
}

void JobStore::Create(const GenerationJob& job) {
  std::lock_guard<std::mutex> guard(LockFor(job.id));
  if (std::filesystem::exists(PathOf(job.id))) {
    Throw(ErrorCode::kStoreError, "job " + job.id + " already exists");
  }
  WriteFileAtomic(PathOf(job.id), JobToJson(job));
}

bool JobStore::Exists(const std::string& id) const { return std::filesystem::exists(PathOf(id)); }

GenerationJob JobStore::Load(const std::string& id) const {
  const std::filesystem::path path = PathOf(id);
  if (!std::filesystem::exists(path)) Throw(ErrorCode::kStoreError, "unknown job " + id);
  try {
    return JobFromJson(ReadFileText(path));
  } catch (const Error& e) {
    Throw(ErrorCode::kStoreError, "cannot load job " + id + ": " + e.what());
  }
}

GenerationJob JobStore::Update(const std::string& id,
                               const std::function<void(GenerationJob&)>& mutate) {
  std::lock_guard<std::mutex> guard(LockFor(id));
  GenerationJob job = Load(id);
  mutate(job);
  WriteFileAtomic(PathOf(id), JobToJson(job));
  return job;
}

std::vector<std::string> JobStore::List() const {
  std::vector<std::string> ids;
  for (const auto& entry : std::filesystem::directory_iterator(root_ / "jobs")) {
    if (entry.path().extension() == ".json") ids.push_back(entry.path().stem().string());
  }
  std::sort(ids.begin(), ids.end());
  return ids;
}

}  // namespace propforge
