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

#ifndef PROPFORGE_PIPELINE_JOB_STORE_H_
#define PROPFORGE_PIPELINE_JOB_STORE_H_

#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "propforge/pipeline/job.h"

namespace propforge {

// One JSON record per job under <root>/jobs/<id>.json, rewritten atomically
// on every mutation. Mutations of the same id are serialized.
class JobStore {
 public:
  explicit JobStore(std::filesystem::path root);

  // StoreError if the id already exists.
  void Create(const GenerationJob& job);
  // StoreError if the id is unknown or the record is unreadable.
  GenerationJob Load(const std::string& id) const;
  bool Exists(const std::string& id) const;
  // Load, mutate and save under the job's lock; returns the saved record.
  GenerationJob Update(const std::string& id, const std::function<void(GenerationJob&)>& mutate);
  std::vector<std::string> List() const;

 private:
  std::filesystem::path PathOf(const std::string& id) const;
  std::mutex& LockFor(const std::string& id);

  std::filesystem::path root_;
  std::mutex table_mutex_;
  std::map<std::string, std::unique_ptr<std::mutex>> locks_;
};

// Job ids are restricted to [A-Za-z0-9_-] so they are safe as file names.
bool IsValidJobId(const std::string& id);

}  // namespace propforge

#endif  // PROPFORGE_PIPELINE_JOB_STORE_H_
