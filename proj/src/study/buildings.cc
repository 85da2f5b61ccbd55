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

#include "sreval/csv.h"
#include "sreval/study.h"

namespace sreval {

std::vector<BuildingStats> BuildingStudyStats(const std::vector<BuildingAnnotation>& annotations,
                                              RecallAveraging averaging) {
  if (annotations.empty()) throw ValidationError("building study needs at least one annotation");

  struct Accumulator {
    BuildingStats stats;
    double macro_sum = 0.0;
    std::size_t macro_n = 0;
  };
  std::map<std::string, Accumulator> per_model;
  for (const BuildingAnnotation& a : annotations) {
    if (a.gt_buildings < 0 || a.matched_buildings < 0 || a.hallucinated_buildings < 0) {
      throw ValidationError("negative building count for (" + a.item_id + ", " + a.model_id + ")");
    }
    if (a.matched_buildings > a.gt_buildings) {
      throw ValidationError("matched buildings exceed ground truth for (" + a.item_id + ", " +
                            a.model_id + ")");
    }
    Accumulator& acc = per_model[a.model_id];
    acc.stats.model_id = a.model_id;
    ++acc.stats.n_images;
    acc.stats.total_gt += a.gt_buildings;
    acc.stats.total_matched += a.matched_buildings;
    acc.stats.total_hallucinated += a.hallucinated_buildings;
    if (a.gt_buildings > 0) {
      acc.macro_sum += static_cast<double>(a.matched_buildings) / a.gt_buildings;
      ++acc.macro_n;
    }
  }

  std::vector<BuildingStats> out;
  for (auto& [model, acc] : per_model) {
    BuildingStats s = acc.stats;
    if (s.total_gt == 0) {
      throw ValidationError("recall undefined for model '" + model +
                            "': no ground-truth buildings");
    }
    s.gt_recall = averaging == RecallAveraging::kMicro
                      ? static_cast<double>(s.total_matched) / static_cast<double>(s.total_gt)
                      : acc.macro_sum / static_cast<double>(acc.macro_n);
    s.hallucination_rate =
        static_cast<double>(s.total_hallucinated) / static_cast<double>(s.n_images);
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<BuildingAnnotation> ReadBuildingAnnotations(const std::filesystem::path& path) {
  const CsvDocument doc = ReadCsv(path);
  ExpectHeader(doc, {"item", "model", "gt", "matched", "hallucinated"});
  std::vector<BuildingAnnotation> out;
  for (const CsvRow& row : doc.rows) {
    BuildingAnnotation a;
    a.item_id = row.fields[0];
    a.model_id = row.fields[1];
    a.gt_buildings = ParseInteger(row.fields[2], doc.source, row.line);
    a.matched_buildings = ParseInteger(row.fields[3], doc.source, row.line);
    a.hallucinated_buildings = ParseInteger(row.fields[4], doc.source, row.line);
    if (a.gt_buildings < 0 || a.matched_buildings < 0 || a.hallucinated_buildings < 0) {
      throw ParseError(doc.source, row.line, "building counts must be >= 0");
    }
    if (a.matched_buildings > a.gt_buildings) {
      throw ParseError(doc.source, row.line, "matched exceeds gt");
    }
    out.push_back(std::move(a));
  }
  return out;
}

std::string FormatBuildingCsv(const std::vector<BuildingStats>& stats) {
  std::string out = "model,gt_recall,hallucination_rate,n_images,gt,matched,hallucinated\n";
  char buf[128];
  for (const BuildingStats& s : stats) {
    std::snprintf(buf, sizeof(buf), "%.6f,%.6f,%zu,%lld,%lld,%lld", s.gt_recall,
                  s.hallucination_rate, s.n_images, s.total_gt, s.total_matched,
                  s.total_hallucinated);
    out += CsvEscape(s.model_id) + "," + buf + "\n";
  }
  return out;
}

}  // namespace sreval
