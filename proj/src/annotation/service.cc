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

#include "httplib.h"
#include "json.hpp"

#include "sreval/annotation.h"
#include "sreval/csv.h"

namespace sreval {

namespace {

constexpr char kSessionHeader[] = "X-Session";
constexpr char kSessionCookie[] = "sreval_session";

std::string SessionFrom(const httplib::Request& req) {
  if (req.has_header(kSessionHeader)) return req.get_header_value(kSessionHeader);
  const std::string cookies = req.get_header_value("Cookie");
  const std::string key = std::string(kSessionCookie) + "=";
  std::size_t pos = 0;
  while (pos < cookies.size()) {
    std::size_t end = cookies.find(';', pos);
    if (end == std::string::npos) end = cookies.size();
    std::string part = cookies.substr(pos, end - pos);
    part.erase(0, part.find_first_not_of(' '));
    if (part.starts_with(key)) return part.substr(key.size());
    pos = end + 1;
  }
  return {};
}

void JsonReply(httplib::Response& res, int status, const nlohmann::ordered_json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

void ErrorReply(httplib::Response& res, int status, const std::string& message) {
  JsonReply(res, status, {{"error", message}});
}

}  // namespace

AnnotationService::AnnotationService(ServiceOptions options) : options_(std::move(options)) {
  for (const PairTask& t : options_.tasks) {
    for (const std::string& name : {std::string("gt"), t.model_a, t.model_b}) {
      const auto path = options_.image_root / t.item_id / (name + ".png");
      std::error_code ec;
      if (!std::filesystem::is_regular_file(path, ec)) {
        throw IoError("task " + t.task_id + ": missing image " + path.string());
      }
    }
  }
  store_ = std::make_unique<TaskStore>(options_.tasks, options_.log_path);
  server_ = std::make_unique<httplib::Server>();
  InstallRoutes();
}

AnnotationService::~AnnotationService() { Stop(); }

void AnnotationService::InstallRoutes() {
  httplib::Server& svr = *server_;

  svr.Get("/api/task", [this](const httplib::Request& req, httplib::Response& res) {
    std::string session = SessionFrom(req);
    if (session.empty()) session = store_->NewSession();
    res.set_header(kSessionHeader, session);
    res.set_header("Set-Cookie", std::string(kSessionCookie) + "=" + session + "; Path=/");
    const auto task = store_->NextTask(session);
    if (!task) {
      res.status = 204;
      return;
    }
    const std::string base = "/images/" + task->task_id + "/";
    JsonReply(res, 200,
              {{"task_id", task->task_id},
               {"item_id", task->item_id},
               {"session", session},
               {"images", {{"gt", base + "gt.png"},
                           {"left", base + "left.png"},
                           {"right", base + "right.png"}}}});
  });

  svr.Post("/api/preference", [this](const httplib::Request& req, httplib::Response& res) {
    const std::string session = SessionFrom(req);
    if (session.empty()) return ErrorReply(res, 400, "missing session");
    std::string task_id, choice;
    try {
      const auto body = nlohmann::json::parse(req.body);
      task_id = body.at("task_id").get<std::string>();
      choice = body.at("choice").get<std::string>();
    } catch (const nlohmann::json::exception&) {
      return ErrorReply(res, 400, "body must be {\"task_id\": ..., \"choice\": ...}");
    }
    if (choice != "left" && choice != "right") {
      return ErrorReply(res, 400, "choice must be \"left\" or \"right\"");
    }
    switch (store_->Submit(session, task_id, choice == "left")) {
      case SubmitStatus::kUnknownTask:
        return ErrorReply(res, 404, "unknown task");
      case SubmitStatus::kDuplicate:
        return ErrorReply(res, 409, "task already judged in this session");
      case SubmitStatus::kAccepted:
        break;
    }
    const SessionProgress p = store_->Progress(session);
    JsonReply(res, 200, {{"status", "ok"}, {"completed", p.completed}});
  });

  svr.Get("/api/progress", [this](const httplib::Request& req, httplib::Response& res) {
    const SessionProgress p = store_->Progress(SessionFrom(req));
    JsonReply(res, 200,
              {{"total", p.total},
               {"completed", p.completed},
               {"remaining", p.total - p.completed},
               {"recorded", p.recorded}});
  });

  svr.Get(R"(/images/([^/]+)/(gt|left|right)\.png)",
          [this](const httplib::Request& req, httplib::Response& res) {
            const PairTask* task = store_->FindTask(req.matches[1]);
            if (!task) return ErrorReply(res, 404, "unknown image");
            const std::string role = req.matches[2];
            const std::string name =
                role == "gt" ? "gt" : (role == "left" ? task->model_a : task->model_b);
            try {
              const std::string bytes =
                  ReadTextFile(options_.image_root / task->item_id / (name + ".png"));
              res.set_content(bytes, "image/png");
            } catch (const IoError&) {
              ErrorReply(res, 404, "image unavailable");
            }
          });

  if (options_.ui_root) svr.set_mount_point("/", options_.ui_root->string());
}

int AnnotationService::Bind(const std::string& host, int port) {
  int bound = port;
  if (port == 0) {
    bound = server_->bind_to_any_port(host);
  } else if (!server_->bind_to_port(host, port)) {
    bound = -1;
  }
  if (bound < 0) {
    throw IoError("cannot bind " + host + ":" + std::to_string(port));
  }
  return bound;
}

int AnnotationService::Start(const std::string& host, int port) {
  const int bound = Bind(host, port);
  thread_ = std::thread([this] { server_->listen_after_bind(); });
  server_->wait_until_ready();
  return bound;
}

void AnnotationService::Run(const std::string& host, int port) {
  Bind(host, port);
  server_->listen_after_bind();
}

void AnnotationService::Stop() {
  if (server_) server_->stop();
  if (thread_.joinable()) thread_.join();
}

}  // namespace sreval
