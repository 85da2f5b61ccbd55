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
#include <set>

#include "sreval/dataset.h"
#include "sreval/errors.h"
#include "sreval/random.h"

namespace sreval {

double SplitKey(const TileIndex& tile, std::uint64_t seed) {
  std::uint64_t h = Mix64(seed);
  h = Mix64(h ^ static_cast<std::uint64_t>(tile.x));
  h = Mix64(h ^ static_cast<std::uint64_t>(tile.y));
  return static_cast<double>(h >> 11) * 0x1.0p-53;
}

std::optional<double> SplitAssignment::SmallestSplit(const SplitMembership& row) const {
  for (std::size_t i = 0; i < fractions.size(); ++i) {
    if (row.member[i]) return fractions[i];
  }
  return std::nullopt;
}

std::size_t SplitAssignment::CountInSplit(double pct) const {
  const auto it = std::find(fractions.begin(), fractions.end(), pct);
  if (it == fractions.end()) throw ValidationError("unknown split percentage");
  const auto idx = static_cast<std::size_t>(it - fractions.begin());
  return static_cast<std::size_t>(std::count_if(
      rows.begin(), rows.end(), [idx](const SplitMembership& r) { return r.member[idx]; }));
}

SplitAssignment MakeSplits(const std::vector<TileIndex>& tiles,
                           const std::vector<double>& fractions, std::uint64_t seed) {
  if (tiles.empty()) throw ValidationError("cannot split an empty manifest");
  SplitAssignment out;
  out.fractions = fractions;
  std::sort(out.fractions.begin(), out.fractions.end());
  out.fractions.erase(std::unique(out.fractions.begin(), out.fractions.end()),
                      out.fractions.end());
  for (double f : out.fractions) {
    if (!(f > 0.0 && f <= 100.0)) throw ValidationError("split fractions must be in (0, 100]");
  }
  const std::set<TileIndex> distinct(tiles.begin(), tiles.end());
  for (const TileIndex& t : distinct) {
    SplitMembership row{t, SplitKey(t, seed), {}};
    for (double f : out.fractions) row.member.push_back(row.key < f / 100.0);
    out.rows.push_back(std::move(row));
  }
  return out;
}

SplitAssignment MakeSplits(const std::vector<ManifestEntry>& entries,
                           const std::vector<double>& fractions, std::uint64_t seed) {
  std::vector<TileIndex> tiles;
  tiles.reserve(entries.size());
  for (const ManifestEntry& e : entries) tiles.push_back(e.tile);
  return MakeSplits(tiles, fractions, seed);
}

std::string FormatSplitsCsv(const SplitAssignment& splits) {
  std::string out = "tile_x,tile_y,split_pct_min\n";
  char buf[96];
  for (const SplitMembership& row : splits.rows) {
    const auto smallest = splits.SmallestSplit(row);
    if (smallest) {
      std::snprintf(buf, sizeof(buf), "%lld,%lld,%g\n", static_cast<long long>(row.tile.x),
                    static_cast<long long>(row.tile.y), *smallest);
    } else {
      std::snprintf(buf, sizeof(buf), "%lld,%lld,\n", static_cast<long long>(row.tile.x),
                    static_cast<long long>(row.tile.y));
    }
    out += buf;
  }
  return out;
}

}  // namespace sreval
