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

#include "sreval/csv.h"
#include "sreval/dataset.h"
#include "sreval/errors.h"

namespace sreval {

std::vector<CityRecord> ReadCities(const std::filesystem::path& path) {
  const CsvDocument doc = ReadCsv(path);
  ExpectHeader(doc, {"name", "lon", "lat", "population"});
  std::vector<CityRecord> out;
  for (const CsvRow& row : doc.rows) {
    CityRecord c;
    c.name = row.fields[0];
    c.location.lon = ParseDouble(row.fields[1], doc.source, row.line);
    c.location.lat = ParseDouble(row.fields[2], doc.source, row.line);
    c.population = ParseInteger(row.fields[3], doc.source, row.line);
    if (c.population < 0) throw ParseError(doc.source, row.line, "population must be >= 0");
    try {
      ValidateGeoPoint(c.location);
    } catch (const ValidationError& e) {
      throw ParseError(doc.source, row.line, e.what());
    }
    out.push_back(std::move(c));
  }
  return out;
}

std::vector<ManifestEntry> FilterNearCities(const std::vector<ManifestEntry>& entries,
                                            const std::vector<CityRecord>& cities,
                                            double max_km, long long min_population) {
  if (cities.empty()) throw ValidationError("city filter needs a non-empty city list");
  if (!(max_km > 0.0)) throw ValidationError("city filter radius must be positive");

  std::vector<GeoPoint> qualifying;
  for (const CityRecord& c : cities) {
    if (c.population >= min_population) qualifying.push_back(c.location);
  }
  std::vector<ManifestEntry> out;
  for (const ManifestEntry& e : entries) {
    const GeoPoint center = TileCenter(e.tile);
    for (const GeoPoint& city : qualifying) {
      if (HaversineKm(center, city) <= max_km) {
        out.push_back(e);
        break;
      }
    }
  }
  return out;
}

}  // namespace sreval
