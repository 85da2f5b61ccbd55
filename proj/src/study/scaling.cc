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

#include <cstdio>
#include <map>
#include <tuple>

#include "sreval/csv.h"
#include "sreval/study.h"

namespace sreval {

ScalingGrouping ReadScalingGroups(const std::filesystem::path& path) {
  const CsvDocument doc = ReadCsv(path);
  ScalingGrouping grouping;
  if (doc.header.size() == 3 && doc.header[0] == "model") {
    ExpectHeader(doc, {"model", "split_pct", "model_size"});
    grouping.key = GroupKey::kModel;
  } else {
    ExpectHeader(doc, {"item", "split_pct", "model_size"});
    grouping.key = GroupKey::kItem;
  }
  for (const CsvRow& row : doc.rows) {
    ScalingGroup g;
    g.split_pct = ParseDouble(row.fields[1], doc.source, row.line);
    if (!(g.split_pct > 0.0 && g.split_pct <= 100.0)) {
      throw ParseError(doc.source, row.line, "split_pct must be in (0, 100]");
    }
    g.model_size = row.fields[2];
    if (!grouping.groups.emplace(row.fields[0], g).second) {
      throw ParseError(doc.source, row.line, "duplicate group key '" + row.fields[0] + "'");
    }
  }
  return grouping;
}

std::vector<ScalingCell> ScalingReport(const ScoreTable& scores, const ScalingGrouping& grouping) {
  using CellKey = std::tuple<std::string, double, std::string>;
  struct Sum {
    double total = 0.0;
    std::size_t n = 0;
  };
  std::map<CellKey, Sum> cells;
  // Records() is in key order, so each cell sums in a fixed order.
  for (const ScoreRecord& r : scores.Records()) {
    const std::string& key = grouping.key == GroupKey::kItem ? r.item : r.model;
    auto it = grouping.groups.find(key);
    if (it == grouping.groups.end()) {
      throw ValidationError(std::string(grouping.key == GroupKey::kItem ? "item" : "model") +
                            " '" + key + "' has no scaling group");
    }
    Sum& s = cells[CellKey{r.metric, it->second.split_pct, it->second.model_size}];
    s.total += r.value;
    ++s.n;
  }
  std::vector<ScalingCell> out;
  for (const auto& [key, sum] : cells) {
    out.push_back(ScalingCell{std::get<0>(key), std::get<1>(key), std::get<2>(key),
                              sum.total / static_cast<double>(sum.n), sum.n});
  }
  return out;
}

std::string FormatScalingCsv(const std::vector<ScalingCell>& cells) {
  std::string out = "metric,split_pct,model_size,mean,n\n";
  char pct[32];
  for (const ScalingCell& c : cells) {
    std::snprintf(pct, sizeof(pct), "%g", c.split_pct);
    out += CsvEscape(c.metric) + "," + pct + "," + CsvEscape(c.model_size) + "," +
           FormatScoreValue(c.metric, c.mean) + "," + std::to_string(c.n) + "\n";
  }
  return out;
}

}  // namespace sreval
