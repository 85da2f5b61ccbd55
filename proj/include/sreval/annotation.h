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

#ifndef SREVAL_ANNOTATION_H_
#define SREVAL_ANNOTATION_H_

#include <cstdio>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "sreval/study.h"

namespace httplib {
class Server;
}

namespace sreval {

enum class SubmitStatus { kAccepted, kUnknownTask, kDuplicate };

struct SessionProgress {
  std::size_t total = 0;      // tasks in the study
  std::size_t completed = 0;  // judged by this session
  std::size_t recorded = 0;   // records in the log across all sessions
};

// Session bookkeeping and the append-only preference log. The task list is
// immutable; session state and log appends go through one mutex.
//
// Every session walks the task list in order; a task handed out and not yet
// judged is handed out again on the next request rather than skipped, so a
// task is never given to the same session as two different assignments.
class TaskStore {
 public:
  // Opens (creating if needed) the log and replays it so judgments made
  // before a restart still count as completed. Throws ValidationError for
  // an empty task list, IoError if the log cannot be opened.
  TaskStore(std::vector<PairTask> tasks, std::filesystem::path log_path);
  ~TaskStore();

  TaskStore(const TaskStore&) = delete;
  TaskStore& operator=(const TaskStore&) = delete;

  // Fresh opaque session token (128 random bits, hex).
  std::string NewSession();

  // Pending task for the session, else its next unjudged task; nullopt once
  // the session has judged everything.
  std::optional<PairTask> NextTask(const std::string& session);

  // Records a judgment. `left` maps to side A. On acceptance the de-blinded
  // record is appended and flushed to the log before returning.
  SubmitStatus Submit(const std::string& session, const std::string& task_id, bool left,
                      PreferenceRecord* written = nullptr);

  SessionProgress Progress(const std::string& session) const;

  const PairTask* FindTask(const std::string& task_id) const;
  const std::vector<PairTask>& tasks() const { return tasks_; }

 private:
  struct Session {
    std::size_t cursor = 0;  // index of the next task not yet handed out
    std::optional<std::size_t> pending;
    std::set<std::string> completed;
  };

  void Append(const PreferenceRecord& record);

  const std::vector<PairTask> tasks_;
  std::map<std::string, std::size_t, std::less<>> index_;
  std::filesystem::path log_path_;

  mutable std::mutex mu_;
  std::map<std::string, Session, std::less<>> sessions_;
  std::size_t recorded_ = 0;
  std::FILE* log_ = nullptr;
};

// Reads the service's log back as preference records.
std::vector<PreferenceRecord> ExportPreferences(const std::filesystem::path& log_path);

struct ServiceOptions {
  std::vector<PairTask> tasks;
  // Holds <item>/gt.png and <item>/<model>.png for every task.
  std::filesystem::path image_root;
  std::filesystem::path log_path;
  // Optional static front-end mounted at "/".
  std::optional<std::filesystem::path> ui_root;
};

// HTTP front of a TaskStore.
//
//   GET  /api/task        next task for the session, 204 when done
//   POST /api/preference  {"task_id": ..., "choice": "left" | "right"}
//   GET  /api/progress    {"total", "completed", "remaining", "recorded"}
//   GET  /images/<task_id>/{gt,left,right}.png
//
// The session token travels in the X-Session header (or the sreval_session
// cookie); GET /api/task issues one when the request has none. Task
// payloads carry only opaque URLs, never model ids.
class AnnotationService {
 public:
  // Throws IoError when an image referenced by a task is missing.
  explicit AnnotationService(ServiceOptions options);
  ~AnnotationService();

  AnnotationService(const AnnotationService&) = delete;
  AnnotationService& operator=(const AnnotationService&) = delete;

  // Binds (port 0 picks a free port) and serves on a background thread.
  // Returns the bound port. Throws IoError when binding fails.
  int Start(const std::string& host, int port);

  // Binds and serves on the calling thread until Stop().
  void Run(const std::string& host, int port);

  void Stop();

  TaskStore& store() { return *store_; }

 private:
  void InstallRoutes();
  int Bind(const std::string& host, int port);

  ServiceOptions options_;
  std::unique_ptr<TaskStore> store_;
  std::unique_ptr<httplib::Server> server_;
  std::thread thread_;
};

}  // namespace sreval

#endif  // SREVAL_ANNOTATION_H_
