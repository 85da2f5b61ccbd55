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

#include <algorithm>
#include <set>

#include "json.hpp"

#include "sreval/csv.h"
#include "sreval/random.h"
#include "sreval/study.h"

namespace sreval {

std::vector<PairTask> SampleAnnotationPairs(const std::vector<std::string>& items,
                                            const std::vector<std::string>& models,
                                            std::size_t n, std::uint64_t seed) {
  const std::set<std::string> distinct(models.begin(), models.end());
  if (distinct.size() < 2 || distinct.size() != models.size()) {
    throw ValidationError("pair sampling needs at least two distinct model ids");
  }
  if (items.empty()) throw ValidationError("pair sampling needs at least one item");
  if (n < 1) throw ValidationError("pair sampling needs n >= 1");

  // Enumerate unordered pairs (i < j) once so each is equally likely.
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < models.size(); ++i) {
    for (std::size_t j = i + 1; j < models.size(); ++j) pairs.emplace_back(i, j);
  }

  Rng rng(seed);
  const int width = std::max<int>(5, static_cast<int>(std::to_string(n - 1).size()));
  std::vector<PairTask> tasks;
  tasks.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    const std::string& item = items[rng.UniformInt(items.size())];
    auto [i, j] = pairs[rng.UniformInt(pairs.size())];
    if (rng.Bernoulli(0.5)) std::swap(i, j);
    std::string id = std::to_string(k);
    id.insert(0, static_cast<std::size_t>(std::max(0, width - static_cast<int>(id.size()))), '0');
    tasks.push_back(PairTask{"t" + id, item, models[i], models[j]});
  }
  return tasks;
}

std::string TaskToJsonLine(const PairTask& task) {
  nlohmann::ordered_json j;
  j["task_id"] = task.task_id;
  j["item_id"] = task.item_id;
  j["model_a"] = task.model_a;
  j["model_b"] = task.model_b;
  return j.dump();
}

std::vector<PairTask> ReadTasks(const std::filesystem::path& path) {
  const std::string text = ReadTextFile(path);
  std::vector<PairTask> out;
  std::set<std::string> ids;
  std::size_t pos = 0;
  std::size_t line = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string::npos) end = text.size();
    std::string_view row(text.data() + pos, end - pos);
    pos = end + 1;
    ++line;
    if (row.find_first_not_of(" \t\r") == std::string_view::npos) continue;
    PairTask t;
    try {
      const auto j = nlohmann::json::parse(row);
      t.task_id = j.at("task_id").get<std::string>();
      t.item_id = j.at("item_id").get<std::string>();
      t.model_a = j.at("model_a").get<std::string>();
      t.model_b = j.at("model_b").get<std::string>();
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(path.string(), line, e.what());
    }
    if (t.task_id.empty() || t.item_id.empty() || t.model_a.empty() || t.model_b.empty()) {
      throw ParseError(path.string(), line, "task has an empty id");
    }
    if (t.model_a == t.model_b) {
      throw ParseError(path.string(), line, "task compares a model with itself");
    }
    if (!ids.insert(t.task_id).second) {
      throw ParseError(path.string(), line, "duplicate task_id '" + t.task_id + "'");
    }
    out.push_back(std::move(t));
  }
  return out;
}

void WriteTasks(const std::filesystem::path& path, const std::vector<PairTask>& tasks) {
  std::string out;
  for (const PairTask& t : tasks) out += TaskToJsonLine(t) + "\n";
  WriteTextFile(path, out);
}

}  // namespace sreval
