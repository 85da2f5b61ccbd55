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

#ifndef SREVAL_GEO_H_
#define SREVAL_GEO_H_

#include <compare>
#include <cstdint>
#include <utility>

namespace sreval {

// Latitude limit of the square Web-Mercator world, atan(sinh(pi)) in degrees.
inline constexpr double kMaxMercatorLatitude = 85.05112877980659;
inline constexpr double kEarthRadiusKm = 6371.0;
inline constexpr int kMaxZoom = 30;

struct GeoPoint {
  double lon = 0.0;  // degrees, [-180, 180]
  double lat = 0.0;  // degrees, |lat| <= kMaxMercatorLatitude
};

// Slippy-map tile address.
struct TileIndex {
  int zoom = 0;
  std::int64_t x = 0;
  std::int64_t y = 0;

  friend auto operator<=>(const TileIndex&, const TileIndex&) = default;
};

// Throws ValidationError when the point is outside the Web-Mercator range.
void ValidateGeoPoint(const GeoPoint& p);

// Throws ValidationError when zoom is outside [0, kMaxZoom] or x/y are
// outside [0, 2^zoom).
void ValidateTile(const TileIndex& t);

TileIndex LonLatToTile(const GeoPoint& p, int zoom);

// South-west and north-east corners of the tile.
std::pair<GeoPoint, GeoPoint> TileToBounds(const TileIndex& t);

// Point at the middle of the tile in projected (Mercator) space.
GeoPoint TileCenter(const TileIndex& t);

// Great-circle distance on a sphere of radius kEarthRadiusKm.
double HaversineKm(const GeoPoint& a, const GeoPoint& b);

}  // namespace sreval

#endif  // SREVAL_GEO_H_
