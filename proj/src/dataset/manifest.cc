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
#include <map>
#include <set>

#include "json.hpp"

#include "sreval/csv.h"
#include "sreval/dataset.h"
#include "sreval/errors.h"

namespace sreval {

namespace {

void RequireManifestZoom(const TileIndex& t) {
  if (t.zoom != kManifestZoom) {
    throw ValidationError("manifest tiles must be zoom " + std::to_string(kManifestZoom) +
                          ", got " + std::to_string(t.zoom));
  }
  ValidateTile(t);
}

}  // namespace

ManifestResult BuildManifest(const std::vector<IndexRecord>& hr_index,
                             const std::vector<IndexRecord>& lr_index,
                             const ManifestOptions& options) {
  if (options.window_days < 0) throw ValidationError("window_days must be >= 0");

  std::map<TileIndex, std::vector<LrFrame>> lr_by_tile;
  for (const IndexRecord& r : lr_index) {
    RequireManifestZoom(r.tile);
    lr_by_tile[r.tile].push_back(LrFrame{r.path, r.timestamp});
  }
  for (auto& [tile, frames] : lr_by_tile) {
    std::sort(frames.begin(), frames.end(), [](const LrFrame& a, const LrFrame& b) {
      return std::tie(a.timestamp, a.path) < std::tie(b.timestamp, b.path);
    });
  }

  std::set<std::pair<TileIndex, Timestamp>> seen;
  for (const IndexRecord& r : hr_index) {
    RequireManifestZoom(r.tile);
    if (!seen.emplace(r.tile, r.timestamp).second) {
      throw ValidationError("duplicate HR record for tile (" + std::to_string(r.tile.x) + ", " +
                            std::to_string(r.tile.y) + ") at " + FormatIso8601(r.timestamp));
    }
  }

  const auto window = std::chrono::days{options.window_days};
  ManifestResult result;
  for (const IndexRecord& hr : hr_index) {
    ManifestEntry entry{hr.tile, hr.path, hr.timestamp, {}};
    auto it = lr_by_tile.find(hr.tile);
    if (it != lr_by_tile.end()) {
      for (const LrFrame& f : it->second) {
        if (f.timestamp >= hr.timestamp - window && f.timestamp <= hr.timestamp + window) {
          entry.lr_series.push_back(f);
        }
      }
    }
    if (entry.lr_series.size() < options.min_lr) {
      ++result.dropped;
      continue;
    }
    result.entries.push_back(std::move(entry));
  }
  std::sort(result.entries.begin(), result.entries.end(),
            [](const ManifestEntry& a, const ManifestEntry& b) {
              return std::tie(a.tile, a.hr_timestamp) < std::tie(b.tile, b.hr_timestamp);
            });
  return result;
}

std::vector<IndexRecord> ReadIndexCsv(const std::filesystem::path& path) {
  const CsvDocument doc = ReadCsv(path);
  ExpectHeader(doc, {"tile_x", "tile_y", "path", "timestamp"});
  std::vector<IndexRecord> out;
  for (const CsvRow& row : doc.rows) {
    IndexRecord r;
    r.tile = TileIndex{kManifestZoom, ParseInteger(row.fields[0], doc.source, row.line),
                       ParseInteger(row.fields[1], doc.source, row.line)};
    try {
      ValidateTile(r.tile);
      r.timestamp = ParseIso8601(row.fields[3]);
    } catch (const ValidationError& e) {
      throw ParseError(doc.source, row.line, e.what());
    }
    r.path = row.fields[2];
    out.push_back(std::move(r));
  }
  return out;
}

std::string ManifestEntryToJsonLine(const ManifestEntry& entry) {
  nlohmann::ordered_json j;
  j["tile"] = {{"zoom", entry.tile.zoom}, {"x", entry.tile.x}, {"y", entry.tile.y}};
  j["hr_path"] = entry.hr_path;
  j["hr_timestamp"] = FormatIso8601(entry.hr_timestamp);
  auto series = nlohmann::ordered_json::array();
  for (const LrFrame& f : entry.lr_series) {
    series.push_back({{"path", f.path}, {"timestamp", FormatIso8601(f.timestamp)}});
  }
  j["lr_series"] = std::move(series);
  return j.dump();
}

void WriteManifest(const std::filesystem::path& path, const std::vector<ManifestEntry>& entries) {
  std::string out;
  for (const ManifestEntry& e : entries) out += ManifestEntryToJsonLine(e) + "\n";
  WriteTextFile(path, out);
}

std::vector<ManifestEntry> ReadManifest(const std::filesystem::path& path) {
  const std::string text = ReadTextFile(path);
  std::vector<ManifestEntry> out;
  std::size_t pos = 0;
  std::size_t line = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string::npos) end = text.size();
    std::string_view row(text.data() + pos, end - pos);
    pos = end + 1;
    ++line;
    if (row.find_first_not_of(" \t\r") == std::string_view::npos) continue;
    try {
      const auto j = nlohmann::json::parse(row);
      ManifestEntry e;
      const auto& t = j.at("tile");
      e.tile = TileIndex{t.at("zoom").get<int>(), t.at("x").get<std::int64_t>(),
                         t.at("y").get<std::int64_t>()};
      RequireManifestZoom(e.tile);
      e.hr_path = j.at("hr_path").get<std::string>();
      e.hr_timestamp = ParseIso8601(j.at("hr_timestamp").get<std::string>());
      for (const auto& f : j.at("lr_series")) {
        e.lr_series.push_back(
            LrFrame{f.at("path").get<std::string>(),
                    ParseIso8601(f.at("timestamp").get<std::string>())});
      }
      out.push_back(std::move(e));
    } catch (const nlohmann::json::exception& ex) {
      throw ParseError(path.string(), line, ex.what());
    } catch (const ParseError&) {
      throw;
    } catch (const ValidationError& ex) {
      throw ParseError(path.string(), line, ex.what());
    }
  }
  return out;
}

}  // namespace sreval
