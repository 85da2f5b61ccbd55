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

#ifndef SREVAL_STUDY_H_
#define SREVAL_STUDY_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sreval/errors.h"
#include "sreval/score_table.h"
#include "sreval/timestamp.h"

namespace sreval {

// ---------------------------------------------------------------------------
// Human preferences
// ---------------------------------------------------------------------------

enum class Side { kA, kB };

std::string_view SideName(Side side);  // "A" / "B"

// One pairwise judgment: which of two model outputs is closer to the target.
struct PreferenceRecord {
  std::string item_id;
  std::string model_a;
  std::string model_b;
  Side choice = Side::kA;
  std::string annotator_id;
  Timestamp timestamp{};
  std::string task_id;  // optional; set by the annotation service

  friend bool operator==(const PreferenceRecord&, const PreferenceRecord&) = default;
};

// Throws ValidationError when ids are empty or model_a == model_b.
void ValidatePreference(const PreferenceRecord& record);

// One JSON object, no trailing newline.
std::string PreferenceToJsonLine(const PreferenceRecord& record);

// Throws ParseError citing `line` for malformed JSON, missing fields, a
// choice other than "A"/"B", or a record that fails ValidatePreference.
PreferenceRecord ParsePreferenceLine(std::string_view text, const std::string& source,
                                     std::size_t line);

// JSON-lines file, one record per line; blank lines are ignored.
std::vector<PreferenceRecord> ReadPreferences(const std::filesystem::path& path);

// ---------------------------------------------------------------------------
// Pair sampling
// ---------------------------------------------------------------------------

// A blinded comparison: model_a is shown on the left, model_b on the right.
struct PairTask {
  std::string task_id;
  std::string item_id;
  std::string model_a;
  std::string model_b;

  friend bool operator==(const PairTask&, const PairTask&) = default;
};

// Draws `n` tasks. Each task picks an item uniformly, an unordered model pair
// uniformly, and then which model goes on side A by a fair coin. The result
// depends only on the arguments. Throws ValidationError for fewer than two
// distinct models, no items, or n < 1.
std::vector<PairTask> SampleAnnotationPairs(const std::vector<std::string>& items,
                                            const std::vector<std::string>& models,
                                            std::size_t n, std::uint64_t seed);

std::string TaskToJsonLine(const PairTask& task);
std::vector<PairTask> ReadTasks(const std::filesystem::path& path);
void WriteTasks(const std::filesystem::path& path, const std::vector<PairTask>& tasks);

// ---------------------------------------------------------------------------
// Metric agreement
// ---------------------------------------------------------------------------

enum class Polarity { kHigherBetter, kLowerBetter };
enum class Verdict { kA, kB, kTie };

struct MetricSpec {
  std::string id;
  Polarity polarity = Polarity::kHigherBetter;
};

// "psnr", "psnr:higher", "ext:lpips:lower". Native metrics default to
// higher-better; imported metrics must state their polarity.
MetricSpec ParseMetricSpec(std::string_view text);

// A score the agreement computation needed but the table does not have.
class MissingScoreError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// The side a metric prefers for one comparison; exact equality is a tie.
Verdict MetricPreference(const ScoreTable& scores, const MetricSpec& metric,
                         std::string_view item, std::string_view model_a,
                         std::string_view model_b);

struct MetricAgreement {
  std::string metric;
  Polarity polarity = Polarity::kHigherBetter;
  double accuracy = 0.0;  // (agreements + 0.5 * ties) / pairs
  std::size_t n_pairs = 0;
  std::size_t n_agree = 0;
  std::size_t n_ties = 0;
};

struct AgreementReport {
  std::vector<MetricAgreement> metrics;  // in request order
};

// Throws ValidationError for an empty preference list and
// MissingScoreError when any needed score is absent.
AgreementReport AgreementAccuracy(const std::vector<PreferenceRecord>& prefs,
                                  const ScoreTable& scores,
                                  const std::vector<MetricSpec>& metrics);

// CSV `metric,polarity,accuracy,n_pairs,n_agree,n_ties`, rows sorted by
// ascending accuracy (ties broken by metric id). `footer` lines are appended
// as `# ` comments.
std::string FormatAgreementCsv(const AgreementReport& report,
                               const std::vector<std::string>& footer = {});

// ---------------------------------------------------------------------------
// Building-count audit
// ---------------------------------------------------------------------------

struct BuildingAnnotation {
  std::string item_id;
  std::string model_id;
  long long gt_buildings = 0;
  long long matched_buildings = 0;
  long long hallucinated_buildings = 0;
};

enum class RecallAveraging {
  kMicro,  // sum(matched) / sum(gt)
  kMacro,  // mean of per-image matched / gt over images with gt > 0
};

struct BuildingStats {
  std::string model_id;
  double gt_recall = 0.0;
  double hallucination_rate = 0.0;  // mean hallucinated buildings per image
  std::size_t n_images = 0;
  long long total_gt = 0;
  long long total_matched = 0;
  long long total_hallucinated = 0;
};

// Per-model statistics, sorted by model id. Throws ValidationError for an
// empty list, negative counts, matched > gt, or a model whose recall is
// undefined because it has no ground-truth buildings.
std::vector<BuildingStats> BuildingStudyStats(const std::vector<BuildingAnnotation>& annotations,
                                              RecallAveraging averaging = RecallAveraging::kMicro);

// CSV `item,model,gt,matched,hallucinated`.
std::vector<BuildingAnnotation> ReadBuildingAnnotations(const std::filesystem::path& path);

// CSV `model,gt_recall,hallucination_rate,n_images,gt,matched,hallucinated`.
std::string FormatBuildingCsv(const std::vector<BuildingStats>& stats);

// ---------------------------------------------------------------------------
// Scaling report
// ---------------------------------------------------------------------------

struct ScalingGroup {
  double split_pct = 100.0;
  std::string model_size;
};

// Which score-table column the grouping is keyed on.
enum class GroupKey { kItem, kModel };

struct ScalingGrouping {
  GroupKey key = GroupKey::kItem;
  std::map<std::string, ScalingGroup, std::less<>> groups;
};

// CSV with header `item,split_pct,model_size` or `model,split_pct,model_size`.
ScalingGrouping ReadScalingGroups(const std::filesystem::path& path);

struct ScalingCell {
  std::string metric;
  double split_pct = 0.0;
  std::string model_size;
  double mean = 0.0;
  std::size_t n = 0;
};

// Arithmetic mean of every metric per (split, size) cell, sorted by metric,
// split and size. Throws ValidationError naming the first score whose key
// has no group.
std::vector<ScalingCell> ScalingReport(const ScoreTable& scores, const ScalingGrouping& grouping);

// CSV `metric,split_pct,model_size,mean,n`.
std::string FormatScalingCsv(const std::vector<ScalingCell>& cells);

}  // namespace sreval

#endif  // SREVAL_STUDY_H_
