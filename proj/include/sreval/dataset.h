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

#ifndef SREVAL_DATASET_H_
#define SREVAL_DATASET_H_

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "sreval/geo.h"
#include "sreval/timestamp.h"

namespace sreval {

// High-resolution tiles are addressed on the zoom-17 Web-Mercator grid.
inline constexpr int kManifestZoom = 17;
// "Two months" either side of the HR capture, as a closed interval.
inline constexpr int kDefaultWindowDays = 61;
inline constexpr std::size_t kDefaultMinLrFrames = 18;
inline constexpr double kDefaultCityRadiusKm = 20.0;
inline constexpr long long kDefaultMinPopulation = 20000;
inline constexpr std::array<double, 5> kScalingFractions = {1, 3, 10, 30, 100};

// One image in an HR or LR index.
struct IndexRecord {
  TileIndex tile;
  std::string path;
  Timestamp timestamp{};
};

struct LrFrame {
  std::string path;
  Timestamp timestamp{};

  friend bool operator==(const LrFrame&, const LrFrame&) = default;
};

struct ManifestEntry {
  TileIndex tile;
  std::string hr_path;
  Timestamp hr_timestamp{};
  std::vector<LrFrame> lr_series;  // ascending by timestamp

  friend bool operator==(const ManifestEntry&, const ManifestEntry&) = default;
};

struct ManifestOptions {
  int window_days = kDefaultWindowDays;
  std::size_t min_lr = kDefaultMinLrFrames;
};

struct ManifestResult {
  std::vector<ManifestEntry> entries;  // sorted by (tile, hr timestamp)
  std::size_t dropped = 0;             // HR images with fewer than min_lr frames
};

// Pairs every HR image with the LR frames of the same tile captured within
// window_days of it (closed interval). HR images left with fewer than
// min_lr frames are dropped and counted. Throws ValidationError for a
// duplicate (tile, timestamp) in the HR index or a tile not at zoom 17.
ManifestResult BuildManifest(const std::vector<IndexRecord>& hr_index,
                             const std::vector<IndexRecord>& lr_index,
                             const ManifestOptions& options = {});

// CSV `tile_x,tile_y,path,timestamp` with zoom-17 coordinates.
std::vector<IndexRecord> ReadIndexCsv(const std::filesystem::path& path);

// JSON-lines, one entry per line, ISO-8601 timestamps.
std::string ManifestEntryToJsonLine(const ManifestEntry& entry);
void WriteManifest(const std::filesystem::path& path, const std::vector<ManifestEntry>& entries);
std::vector<ManifestEntry> ReadManifest(const std::filesystem::path& path);

struct CityRecord {
  std::string name;
  GeoPoint location;
  long long population = 0;
};

// CSV `name,lon,lat,population`.
std::vector<CityRecord> ReadCities(const std::filesystem::path& path);

// Keeps entries whose tile center lies within max_km of a city with at
// least min_population inhabitants. Throws ValidationError for an empty city
// list or max_km <= 0.
std::vector<ManifestEntry> FilterNearCities(const std::vector<ManifestEntry>& entries,
                                            const std::vector<CityRecord>& cities,
                                            double max_km = kDefaultCityRadiusKm,
                                            long long min_population = kDefaultMinPopulation);

// Stable pseudo-random key in [0, 1) for a tile under a seed.
double SplitKey(const TileIndex& tile, std::uint64_t seed);

struct SplitMembership {
  TileIndex tile;
  double key = 0.0;
  std::vector<bool> member;  // parallel to SplitAssignment::fractions
};

// Nested percentage splits: a tile belongs to the p% split iff its key is
// below p / 100, so smaller splits are subsets of larger ones.
struct SplitAssignment {
  std::vector<double> fractions;     // ascending percentages
  std::vector<SplitMembership> rows;  // one per distinct tile, sorted by tile

  // Smallest split the row belongs to, if any.
  std::optional<double> SmallestSplit(const SplitMembership& row) const;
  std::size_t CountInSplit(double pct) const;
};

// Membership depends only on (tile, seed), never on input order. Throws
// ValidationError for empty entries or a fraction outside (0, 100].
SplitAssignment MakeSplits(const std::vector<TileIndex>& tiles,
                           const std::vector<double>& fractions, std::uint64_t seed);
SplitAssignment MakeSplits(const std::vector<ManifestEntry>& entries,
                           const std::vector<double>& fractions, std::uint64_t seed);

// CSV `tile_x,tile_y,split_pct_min`; the last column is empty for tiles in
// no split.
std::string FormatSplitsCsv(const SplitAssignment& splits);

}  // namespace sreval

#endif  // SREVAL_DATASET_H_
