// Copyright 2026 The sreval Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <random>

#include "sreval/annotation.h"

namespace sreval {

TaskStore::TaskStore(std::vector<PairTask> tasks, std::filesystem::path log_path)
    : tasks_(std::move(tasks)), log_path_(std::move(log_path)) {
  if (tasks_.empty()) throw ValidationError("annotation service needs at least one task");
  for (std::size_t i = 0; i < tasks_.size(); ++i) {
    if (!index_.emplace(tasks_[i].task_id, i).second) {
      throw ValidationError("duplicate task_id '" + tasks_[i].task_id + "'");
    }
  }
  std::error_code ec;
  if (std::filesystem::exists(log_path_, ec)) {
    for (const PreferenceRecord& r : ReadPreferences(log_path_)) {
      ++recorded_;
      if (!r.task_id.empty()) sessions_[r.annotator_id].completed.insert(r.task_id);
    }
  }
  log_ = std::fopen(log_path_.c_str(), "a");
  if (!log_) {
    throw IoError("cannot open preference log " + log_path_.string() + ": " +
                  std::strerror(errno));
  }
}

TaskStore::~TaskStore() {
  if (log_) std::fclose(log_);
}

std::string TaskStore::NewSession() {
  std::random_device rd;
  char buf[33];
  std::snprintf(buf, sizeof(buf), "%08x%08x%08x%08x", rd(), rd(), rd(), rd());
  std::lock_guard<std::mutex> lock(mu_);
  sessions_.try_emplace(buf);
  return buf;
}

std::optional<PairTask> TaskStore::NextTask(const std::string& session) {
  std::lock_guard<std::mutex> lock(mu_);
  Session& s = sessions_[session];
  if (s.pending && !s.completed.contains(tasks_[*s.pending].task_id)) {
    return tasks_[*s.pending];
  }
  s.pending.reset();
  while (s.cursor < tasks_.size() && s.completed.contains(tasks_[s.cursor].task_id)) ++s.cursor;
  if (s.cursor == tasks_.size()) return std::nullopt;
  s.pending = s.cursor++;
  return tasks_[*s.pending];
}

SubmitStatus TaskStore::Submit(const std::string& session, const std::string& task_id, bool left,
                               PreferenceRecord* written) {
  const auto it = index_.find(task_id);
  if (it == index_.end()) return SubmitStatus::kUnknownTask;
  const PairTask& task = tasks_[it->second];

  std::lock_guard<std::mutex> lock(mu_);
  Session& s = sessions_[session];
  if (s.completed.contains(task_id)) return SubmitStatus::kDuplicate;

  PreferenceRecord record;
  record.task_id = task.task_id;
  record.item_id = task.item_id;
  record.model_a = task.model_a;
  record.model_b = task.model_b;
  record.choice = left ? Side::kA : Side::kB;
  record.annotator_id = session;
  record.timestamp = NowUtc();
  Append(record);

  s.completed.insert(task_id);
  if (s.pending == it->second) s.pending.reset();
  ++recorded_;
  if (written) *written = std::move(record);
  return SubmitStatus::kAccepted;
}

void TaskStore::Append(const PreferenceRecord& record) {
  const std::string line = PreferenceToJsonLine(record) + "\n";
  if (std::fwrite(line.data(), 1, line.size(), log_) != line.size() || std::fflush(log_) != 0) {
    throw IoError("cannot append to " + log_path_.string() + ": " + std::strerror(errno));
  }
  ::fsync(::fileno(log_));
}

SessionProgress TaskStore::Progress(const std::string& session) const {
  std::lock_guard<std::mutex> lock(mu_);
  SessionProgress p;
  p.total = tasks_.size();
  p.recorded = recorded_;
  const auto it = sessions_.find(session);
  if (it != sessions_.end()) p.completed = it->second.completed.size();
  return p;
}

const PairTask* TaskStore::FindTask(const std::string& task_id) const {
  const auto it = index_.find(task_id);
  return it == index_.end() ? nullptr : &tasks_[it->second];
}

std::vector<PreferenceRecord> ExportPreferences(const std::filesystem::path& log_path) {
  return ReadPreferences(log_path);
}

}  // namespace sreval
