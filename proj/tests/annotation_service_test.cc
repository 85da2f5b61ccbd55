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

#include <set>
#include <thread>

#include "gtest/gtest.h"
#include "httplib.h"
#include "json.hpp"

#include "sreval/annotation.h"
#include "sreval/errors.h"
#include "sreval/png_io.h"
#include "sreval/study.h"
#include "test_support.h"

namespace sreval {
namespace {

using ::sreval::testing::TempDir;
using Json = nlohmann::json;

const std::vector<std::string> kModels = {"esrgan_large", "srcnn_base", "bicubic_up"};

// Image tree plus tasks for a small study.
struct Study {
  TempDir dir;
  std::vector<PairTask> tasks;

  explicit Study(std::size_t n, std::uint64_t seed = 1) {
    const std::vector<std::string> items{"tile_a", "tile_b", "tile_c"};
    for (const std::string& item : items) {
      std::filesystem::create_directories(dir / item);
      SaveRaster(dir / item / "gt.png", Raster::Filled(4, 4, 3, Depth::kU8, 10.0f));
      for (std::size_t m = 0; m < kModels.size(); ++m) {
        SaveRaster(dir / item / (kModels[m] + ".png"),
                   Raster::Filled(4, 4, 3, Depth::kU8, 50.0f * (m + 1)));
      }
    }
    tasks = SampleAnnotationPairs(items, kModels, n, seed);
  }

  ServiceOptions Options() const {
    ServiceOptions o;
    o.tasks = tasks;
    o.image_root = dir.path();
    o.log_path = dir / "prefs.jsonl";
    return o;
  }
};

// Scripted client holding one session token.
class Annotator {
 public:
  explicit Annotator(int port) : client_("127.0.0.1", port) {}

  httplib::Result GetTask() {
    auto res = client_.Get("/api/task", Headers());
    if (res && res->has_header("X-Session")) session_ = res->get_header_value("X-Session");
    return res;
  }

  httplib::Result Submit(const std::string& task_id, const std::string& choice) {
    const Json body = {{"task_id", task_id}, {"choice", choice}};
    return client_.Post("/api/preference", Headers(), body.dump(), "application/json");
  }

  Json Progress() { return Json::parse(client_.Get("/api/progress", Headers())->body); }

  httplib::Client& client() { return client_; }
  const std::string& session() const { return session_; }

 private:
  httplib::Headers Headers() const {
    return session_.empty() ? httplib::Headers{} : httplib::Headers{{"X-Session", session_}};
  }

  httplib::Client client_;
  std::string session_;
};

TEST(AnnotationServiceTest, TaskPayloadIsBlinded) {
  Study study(30);
  AnnotationService service(study.Options());
  Annotator ann(service.Start("127.0.0.1", 0));
  for (std::size_t i = 0; i < study.tasks.size(); ++i) {
    auto res = ann.GetTask();
    ASSERT_TRUE(res);
    ASSERT_EQ(res->status, 200);
    for (const std::string& m : kModels) {
      EXPECT_EQ(res->body.find(m), std::string::npos) << res->body;
    }
    const Json task = Json::parse(res->body);
    for (const char* role : {"gt", "left", "right"}) {
      const std::string url = task["images"][role];
      auto img = ann.client().Get(url);
      ASSERT_TRUE(img);
      EXPECT_EQ(img->status, 200);
      EXPECT_EQ(img->get_header_value("Content-Type"), "image/png");
      EXPECT_EQ(url.find("esrgan"), std::string::npos);
    }
    ASSERT_EQ(ann.Submit(task["task_id"], "left")->status, 200);
  }
  service.Stop();
}

TEST(AnnotationServiceTest, RoundTripDeblindsChoice) {
  Study study(4);
  AnnotationService service(study.Options());
  Annotator ann(service.Start("127.0.0.1", 0));
  const Json first = Json::parse(ann.GetTask()->body);
  EXPECT_EQ(ann.Submit(first["task_id"], "right")->status, 200);
  const Json second = Json::parse(ann.GetTask()->body);
  EXPECT_NE(second["task_id"], first["task_id"]);
  EXPECT_EQ(ann.Submit(second["task_id"], "left")->status, 200);
  service.Stop();

  const auto prefs = ExportPreferences(study.dir / "prefs.jsonl");
  ASSERT_EQ(prefs.size(), 2u);
  const PairTask& t0 = study.tasks[0];
  EXPECT_EQ(prefs[0].task_id, t0.task_id);
  EXPECT_EQ(prefs[0].item_id, t0.item_id);
  EXPECT_EQ(prefs[0].model_a, t0.model_a);
  EXPECT_EQ(prefs[0].model_b, t0.model_b);
  EXPECT_EQ(prefs[0].choice, Side::kB);
  EXPECT_EQ(prefs[1].choice, Side::kA);
  EXPECT_EQ(prefs[0].annotator_id, ann.session());
}

TEST(AnnotationServiceTest, ErrorsAndExhaustion) {
  Study study(2);
  AnnotationService service(study.Options());
  const int port = service.Start("127.0.0.1", 0);
  Annotator ann(port);

  // No session yet.
  EXPECT_EQ(ann.Submit(study.tasks[0].task_id, "left")->status, 400);

  const Json t = Json::parse(ann.GetTask()->body);
  EXPECT_EQ(ann.Submit("t99999", "left")->status, 404);
  EXPECT_EQ(ann.Submit(t["task_id"], "middle")->status, 400);
  auto bad = ann.client().Post("/api/preference", {{"X-Session", ann.session()}}, "{", "application/json");
  EXPECT_EQ(bad->status, 400);
  EXPECT_EQ(ann.Submit(t["task_id"], "left")->status, 200);
  EXPECT_EQ(ann.Submit(t["task_id"], "right")->status, 409);

  // A pending task is re-served until judged.
  const Json t2 = Json::parse(ann.GetTask()->body);
  EXPECT_EQ(Json::parse(ann.GetTask()->body)["task_id"], t2["task_id"]);
  EXPECT_EQ(ann.Submit(t2["task_id"], "left")->status, 200);
  EXPECT_EQ(ann.GetTask()->status, 204);

  const Json p = ann.Progress();
  EXPECT_EQ(p["total"], 2);
  EXPECT_EQ(p["completed"], 2);
  EXPECT_EQ(p["remaining"], 0);
  EXPECT_EQ(p["recorded"], 2);
  EXPECT_EQ(ann.client().Get("/images/t99999/gt.png")->status, 404);

  // A second session still sees every task.
  Annotator other(port);
  EXPECT_EQ(other.GetTask()->status, 200);
  EXPECT_NE(other.session(), ann.session());
  service.Stop();
}

TEST(AnnotationServiceTest, DurableAcrossRestart) {
  Study study(6);
  std::string session;
  std::set<std::string> judged;
  for (int round = 0; round < 3; ++round) {
    AnnotationService service(study.Options());
    Annotator ann(service.Start("127.0.0.1", 0));
    if (!session.empty()) {
      // Resume the same session through the cookie.
      auto res = ann.client().Get("/api/task", {{"Cookie", "sreval_session=" + session}});
      ASSERT_EQ(res->status, 200);
      EXPECT_FALSE(judged.contains(Json::parse(res->body)["task_id"]));
    }
    auto res = session.empty() ? ann.GetTask()
                               : ann.client().Get("/api/task", {{"X-Session", session}});
    if (session.empty()) session = ann.session();
    for (int k = 0; k < 2; ++k) {
      const std::string id = Json::parse(res->body)["task_id"];
      ASSERT_EQ(ann.client()
                    .Post("/api/preference", {{"X-Session", session}},
                          Json({{"task_id", id}, {"choice", "left"}}).dump(), "application/json")
                    ->status,
                200);
      judged.insert(id);
      res = ann.client().Get("/api/task", {{"X-Session", session}});
    }
    EXPECT_EQ(ExportPreferences(study.dir / "prefs.jsonl").size(), judged.size());
    service.Stop();
  }
  EXPECT_EQ(judged.size(), 6u);
  AnnotationService service(study.Options());
  EXPECT_EQ(service.store().Progress(session).completed, 6u);
  EXPECT_FALSE(service.store().NextTask(session));
}

TEST(AnnotationServiceTest, LeftSideIsRandomized) {
  Study study(240, 7);
  AnnotationService service(study.Options());
  Annotator ann(service.Start("127.0.0.1", 0));
  for (std::size_t i = 0; i < study.tasks.size(); ++i) {
    const Json t = Json::parse(ann.GetTask()->body);
    ASSERT_EQ(ann.Submit(t["task_id"], "left")->status, 200);
  }
  service.Stop();
  // Every choice was "left", so side A of each record is the left model.
  const auto prefs = ExportPreferences(study.dir / "prefs.jsonl");
  ASSERT_EQ(prefs.size(), 240u);
  for (const std::string& m : kModels) {
    int shown = 0, left = 0;
    for (const PreferenceRecord& p : prefs) {
      if (p.model_a == m || p.model_b == m) {
        ++shown;
        left += p.model_a == m;
      }
    }
    EXPECT_NEAR(static_cast<double>(left) / shown, 0.5, 0.1) << m;
  }
}

TEST(AnnotationServiceTest, ConcurrentSessionsLogEveryJudgment) {
  Study study(20);
  AnnotationService service(study.Options());
  const int port = service.Start("127.0.0.1", 0);
  std::vector<std::thread> workers;
  for (int w = 0; w < 4; ++w) {
    workers.emplace_back([port] {
      Annotator ann(port);
      while (true) {
        auto res = ann.GetTask();
        if (!res || res->status != 200) break;
        ann.Submit(Json::parse(res->body)["task_id"], "right");
      }
    });
  }
  for (auto& t : workers) t.join();
  service.Stop();
  EXPECT_EQ(ExportPreferences(study.dir / "prefs.jsonl").size(), 80u);
}

TEST(AnnotationServiceTest, MissingImageFailsAtStartup) {
  Study study(3);
  std::filesystem::remove(study.dir / study.tasks[0].item_id / "gt.png");
  EXPECT_THROW(AnnotationService service(study.Options()), IoError);
}

TEST(TaskStoreTest, EmptyTaskListRejected) {
  TempDir dir;
  EXPECT_THROW(TaskStore({}, dir / "log.jsonl"), ValidationError);
}

TEST(ExportPreferencesTest, EmptyValidAndInvalidLogs) {
  TempDir dir;
  testing::WriteFile(dir / "empty.jsonl", "");
  EXPECT_TRUE(ExportPreferences(dir / "empty.jsonl").empty());

  PreferenceRecord r{"i", "a", "b", Side::kA, "s", ParseIso8601("2024-05-01"), "t1"};
  std::string three;
  for (int i = 0; i < 3; ++i) three += PreferenceToJsonLine(r) + "\n";
  testing::WriteFile(dir / "three.jsonl", three);
  EXPECT_EQ(ExportPreferences(dir / "three.jsonl").size(), 3u);

  std::string bad = PreferenceToJsonLine(r) + "\n";
  std::string c = PreferenceToJsonLine(r);
  c.replace(c.find("\"choice\":\"A\""), 12, "\"choice\":\"C\"");
  testing::WriteFile(dir / "bad.jsonl", bad + c + "\n");
  try {
    ExportPreferences(dir / "bad.jsonl");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
}

}  // namespace
}  // namespace sreval
