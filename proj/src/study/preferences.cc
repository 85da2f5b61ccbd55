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

#include <string>

#include "json.hpp"

#include "sreval/csv.h"
#include "sreval/study.h"

namespace sreval {

std::string_view SideName(Side side) { return side == Side::kA ? "A" : "B"; }

void ValidatePreference(const PreferenceRecord& record) {
  if (record.item_id.empty() || record.model_a.empty() || record.model_b.empty()) {
    throw ValidationError("preference has an empty item or model id");
  }
  if (record.model_a == record.model_b) {
    throw ValidationError("preference compares model '" + record.model_a + "' with itself");
  }
}

std::string PreferenceToJsonLine(const PreferenceRecord& record) {
  nlohmann::ordered_json j;
  if (!record.task_id.empty()) j["task_id"] = record.task_id;
  j["item_id"] = record.item_id;
  j["model_a"] = record.model_a;
  j["model_b"] = record.model_b;
  j["choice"] = std::string(SideName(record.choice));
  j["annotator_id"] = record.annotator_id;
  j["timestamp"] = FormatIso8601(record.timestamp);
  return j.dump();
}

PreferenceRecord ParsePreferenceLine(std::string_view text, const std::string& source,
                                     std::size_t line) {
  PreferenceRecord r;
  try {
    const auto j = nlohmann::json::parse(text);
    if (!j.is_object()) throw ParseError(source, line, "expected a JSON object");
    r.item_id = j.at("item_id").get<std::string>();
    r.model_a = j.at("model_a").get<std::string>();
    r.model_b = j.at("model_b").get<std::string>();
    const auto choice = j.at("choice").get<std::string>();
    if (choice == "A") {
      r.choice = Side::kA;
    } else if (choice == "B") {
      r.choice = Side::kB;
    } else {
      throw ParseError(source, line, "choice must be \"A\" or \"B\", got \"" + choice + "\"");
    }
    r.annotator_id = j.value("annotator_id", std::string());
    if (j.contains("timestamp")) r.timestamp = ParseIso8601(j.at("timestamp").get<std::string>());
    r.task_id = j.value("task_id", std::string());
    ValidatePreference(r);
  } catch (const ParseError&) {
    throw;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(source, line, e.what());
  } catch (const ValidationError& e) {
    throw ParseError(source, line, e.what());
  }
  return r;
}

std::vector<PreferenceRecord> ReadPreferences(const std::filesystem::path& path) {
  const std::string text = ReadTextFile(path);
  std::vector<PreferenceRecord> out;
  std::size_t pos = 0;
  std::size_t line = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string::npos) end = text.size();
    std::string_view row(text.data() + pos, end - pos);
    pos = end + 1;
    ++line;
    if (row.find_first_not_of(" \t\r") == std::string_view::npos) continue;
    out.push_back(ParsePreferenceLine(row, path.string(), line));
  }
  return out;
}

}  // namespace sreval
