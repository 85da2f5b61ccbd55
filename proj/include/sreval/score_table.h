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

#ifndef SREVAL_SCORE_TABLE_H_
#define SREVAL_SCORE_TABLE_H_

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

namespace sreval {

// Metric ids understood by the toolkit. Imported metrics use "ext:<name>".
inline constexpr std::string_view kMetricPsnr = "psnr";
inline constexpr std::string_view kMetricSsim = "ssim";
inline constexpr std::string_view kMetricCpsnr = "cpsnr";
inline constexpr std::string_view kMetricClipScore = "clipscore";

bool IsNativeMetric(std::string_view id);
bool IsValidMetricId(std::string_view id);

// Decibel metrics are written with 4 decimals, others with 6; infinity is
// written as `inf`.
std::string FormatScoreValue(std::string_view metric, double value);

struct ScoreRecord {
  std::string item;
  std::string model;
  std::string metric;
  double value = 0.0;
};

struct ScoreKey {
  std::string item;
  std::string model;
  std::string metric;

  friend auto operator<=>(const ScoreKey&, const ScoreKey&) = default;
};

// Collection of scores with unique (item, model, metric) keys, iterated in
// key order.
class ScoreTable {
 public:
  // Throws ValidationError on a duplicate key or an invalid metric id.
  void Add(ScoreRecord record);

  std::optional<double> Find(std::string_view item, std::string_view model,
                             std::string_view metric) const;

  std::size_t size() const { return records_.size(); }
  bool empty() const { return records_.empty(); }

  // Records sorted by (item, model, metric).
  std::vector<ScoreRecord> Records() const;

 private:
  std::map<ScoreKey, double, std::less<>> records_;
};

// Reads a score file: UTF-8 CSV with header `item,model,metric,value`.
// Throws ParseError with the line number for malformed rows and for
// duplicated keys (the message cites both lines).
ScoreTable ReadScoreFile(const std::filesystem::path& path);
ScoreTable ParseScoreCsv(std::string_view text, const std::string& source);

// Serialized form of a table: header plus rows in key order.
std::string FormatScoreCsv(const ScoreTable& table);
void WriteScoreFile(const std::filesystem::path& path, const ScoreTable& table);

}  // namespace sreval

#endif  // SREVAL_SCORE_TABLE_H_
