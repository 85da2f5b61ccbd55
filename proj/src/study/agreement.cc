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
#include <cstdio>

#include "sreval/csv.h"
#include "sreval/study.h"

namespace sreval {

MetricSpec ParseMetricSpec(std::string_view text) {
  MetricSpec spec;
  std::string_view id = text;
  std::optional<Polarity> polarity;
  const std::size_t colon = text.rfind(':');
  if (colon != std::string_view::npos) {
    const std::string_view tail = text.substr(colon + 1);
    if (tail == "higher") {
      polarity = Polarity::kHigherBetter;
      id = text.substr(0, colon);
    } else if (tail == "lower") {
      polarity = Polarity::kLowerBetter;
      id = text.substr(0, colon);
    }
  }
  spec.id = std::string(id);
  if (!IsValidMetricId(spec.id)) {
    throw ValidationError("unknown metric id '" + spec.id + "'");
  }
  if (polarity) {
    spec.polarity = *polarity;
  } else if (IsNativeMetric(spec.id)) {
    spec.polarity = Polarity::kHigherBetter;
  } else {
    throw ValidationError("imported metric '" + spec.id +
                          "' needs an explicit polarity (:higher or :lower)");
  }
  return spec;
}

Verdict MetricPreference(const ScoreTable& scores, const MetricSpec& metric,
                         std::string_view item, std::string_view model_a,
                         std::string_view model_b) {
  auto lookup = [&](std::string_view model) {
    auto v = scores.Find(item, model, metric.id);
    if (!v) {
      throw MissingScoreError("missing score for (" + std::string(item) + ", " +
                              std::string(model) + ", " + metric.id + ")");
    }
    return *v;
  };
  const double a = lookup(model_a);
  const double b = lookup(model_b);
  if (a == b) return Verdict::kTie;
  const bool a_better = metric.polarity == Polarity::kHigherBetter ? a > b : a < b;
  return a_better ? Verdict::kA : Verdict::kB;
}

AgreementReport AgreementAccuracy(const std::vector<PreferenceRecord>& prefs,
                                  const ScoreTable& scores,
                                  const std::vector<MetricSpec>& metrics) {
  if (prefs.empty()) throw ValidationError("agreement needs at least one preference");
  AgreementReport report;
  for (const MetricSpec& m : metrics) {
    MetricAgreement row;
    row.metric = m.id;
    row.polarity = m.polarity;
    for (const PreferenceRecord& p : prefs) {
      const Verdict v = MetricPreference(scores, m, p.item_id, p.model_a, p.model_b);
      ++row.n_pairs;
      if (v == Verdict::kTie) {
        ++row.n_ties;
      } else if ((v == Verdict::kA) == (p.choice == Side::kA)) {
        ++row.n_agree;
      }
    }
    row.accuracy = (static_cast<double>(row.n_agree) + 0.5 * static_cast<double>(row.n_ties)) /
                   static_cast<double>(row.n_pairs);
    report.metrics.push_back(std::move(row));
  }
  return report;
}

std::string FormatAgreementCsv(const AgreementReport& report,
                               const std::vector<std::string>& footer) {
  std::vector<MetricAgreement> rows = report.metrics;
  std::stable_sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
    if (a.accuracy != b.accuracy) return a.accuracy < b.accuracy;
    return a.metric < b.metric;
  });
  std::string out = "metric,polarity,accuracy,n_pairs,n_agree,n_ties\n";
  char buf[64];
  for (const MetricAgreement& r : rows) {
    std::snprintf(buf, sizeof(buf), "%.6f", r.accuracy);
    out += CsvEscape(r.metric) + "," +
           (r.polarity == Polarity::kHigherBetter ? "higher" : "lower") + "," + buf + "," +
           std::to_string(r.n_pairs) + "," + std::to_string(r.n_agree) + "," +
           std::to_string(r.n_ties) + "\n";
  }
  for (const std::string& line : footer) out += "# " + line + "\n";
  return out;
}

}  // namespace sreval
