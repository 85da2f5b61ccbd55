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

#include "sreval/score_table.h"

#include <cmath>
#include <cstdio>

#include "sreval/csv.h"
#include "sreval/errors.h"

namespace sreval {

bool IsNativeMetric(std::string_view id) {
  return id == kMetricPsnr || id == kMetricSsim || id == kMetricCpsnr || id == kMetricClipScore;
}

bool IsValidMetricId(std::string_view id) {
  return IsNativeMetric(id) || (id.starts_with("ext:") && id.size() > 4);
}

std::string FormatScoreValue(std::string_view metric, double value) {
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  const bool decibels = metric == kMetricPsnr || metric == kMetricCpsnr;
  char buf[64];
  std::snprintf(buf, sizeof(buf), decibels ? "%.4f" : "%.6f", value);
  return buf;
}

void ScoreTable::Add(ScoreRecord record) {
  if (!IsValidMetricId(record.metric)) {
    throw ValidationError("unknown metric id '" + record.metric + "'");
  }
  if (std::isnan(record.value)) {
    throw ValidationError("NaN score for (" + record.item + ", " + record.model + ", " +
                          record.metric + ")");
  }
  ScoreKey key{std::move(record.item), std::move(record.model), std::move(record.metric)};
  auto [it, inserted] = records_.emplace(std::move(key), record.value);
  if (!inserted) {
    throw ValidationError("duplicate score for (" + it->first.item + ", " + it->first.model +
                          ", " + it->first.metric + ")");
  }
}

std::optional<double> ScoreTable::Find(std::string_view item, std::string_view model,
                                       std::string_view metric) const {
  auto it = records_.find(ScoreKey{std::string(item), std::string(model), std::string(metric)});
  if (it == records_.end()) return std::nullopt;
  return it->second;
}

std::vector<ScoreRecord> ScoreTable::Records() const {
  std::vector<ScoreRecord> out;
  out.reserve(records_.size());
  for (const auto& [key, value] : records_) {
    out.push_back(ScoreRecord{key.item, key.model, key.metric, value});
  }
  return out;
}

ScoreTable ParseScoreCsv(std::string_view text, const std::string& source) {
  const CsvDocument doc = ParseCsv(text, source);
  ExpectHeader(doc, {"item", "model", "metric", "value"});
  ScoreTable table;
  std::map<ScoreKey, std::size_t> first_line;
  for (const CsvRow& row : doc.rows) {
    const std::string& metric = row.fields[2];
    if (row.fields[0].empty() || row.fields[1].empty()) {
      throw ParseError(source, row.line, "empty item or model id");
    }
    if (!IsValidMetricId(metric)) {
      throw ParseError(source, row.line, "unknown metric id '" + metric + "'");
    }
    const double value = ParseDouble(row.fields[3], source, row.line);
    ScoreKey key{row.fields[0], row.fields[1], metric};
    auto [it, inserted] = first_line.emplace(key, row.line);
    if (!inserted) {
      throw ParseError(source, row.line,
                       "duplicate key (" + key.item + ", " + key.model + ", " + key.metric +
                           ") also on line " + std::to_string(it->second));
    }
    table.Add(ScoreRecord{row.fields[0], row.fields[1], metric, value});
  }
  return table;
}

ScoreTable ReadScoreFile(const std::filesystem::path& path) {
  return ParseScoreCsv(ReadTextFile(path), path.string());
}

std::string FormatScoreCsv(const ScoreTable& table) {
  std::string out = "item,model,metric,value\n";
  for (const ScoreRecord& r : table.Records()) {
    out += CsvEscape(r.item) + "," + CsvEscape(r.model) + "," + CsvEscape(r.metric) + "," +
           FormatScoreValue(r.metric, r.value) + "\n";
  }
  return out;
}

void WriteScoreFile(const std::filesystem::path& path, const ScoreTable& table) {
  WriteTextFile(path, FormatScoreCsv(table));
}

}  // namespace sreval
