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

#include "sreval/geo.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "sreval/errors.h"

namespace sreval {

namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;

double TilesPerSide(int zoom) { return std::ldexp(1.0, zoom); }

// Longitude of the western edge of fractional tile column x.
double ColumnToLon(double x, int zoom) { return x / TilesPerSide(zoom) * 360.0 - 180.0; }

// Latitude of the northern edge of fractional tile row y.
double RowToLat(double y, int zoom) {
  const double n = std::numbers::pi * (1.0 - 2.0 * y / TilesPerSide(zoom));
  return std::atan(std::sinh(n)) / kDegToRad;
}

}  // namespace

void ValidateGeoPoint(const GeoPoint& p) {
  if (!(p.lon >= -180.0 && p.lon <= 180.0)) {
    throw ValidationError("longitude " + std::to_string(p.lon) + " outside [-180, 180]");
  }
  if (!(std::abs(p.lat) <= kMaxMercatorLatitude)) {
    throw ValidationError("latitude " + std::to_string(p.lat) +
                          " outside the Web-Mercator range");
  }
}

void ValidateTile(const TileIndex& t) {
  if (t.zoom < 0 || t.zoom > kMaxZoom) {
    throw ValidationError("zoom " + std::to_string(t.zoom) + " outside [0, 30]");
  }
  const std::int64_t n = std::int64_t{1} << t.zoom;
  if (t.x < 0 || t.x >= n || t.y < 0 || t.y >= n) {
    throw ValidationError("tile (" + std::to_string(t.x) + ", " + std::to_string(t.y) +
                          ") outside the zoom-" + std::to_string(t.zoom) + " grid");
  }
}

TileIndex LonLatToTile(const GeoPoint& p, int zoom) {
  ValidateGeoPoint(p);
  if (zoom < 0 || zoom > kMaxZoom) {
    throw ValidationError("zoom " + std::to_string(zoom) + " outside [0, 30]");
  }
  const double n = TilesPerSide(zoom);
  const double lat = p.lat * kDegToRad;
  const double fx = n * (p.lon + 180.0) / 360.0;
  const double fy = n * (1.0 - std::asinh(std::tan(lat)) / std::numbers::pi) / 2.0;
  const auto last = static_cast<std::int64_t>(n) - 1;
  return TileIndex{zoom, std::clamp(static_cast<std::int64_t>(std::floor(fx)), std::int64_t{0}, last),
                   std::clamp(static_cast<std::int64_t>(std::floor(fy)), std::int64_t{0}, last)};
}

std::pair<GeoPoint, GeoPoint> TileToBounds(const TileIndex& t) {
  ValidateTile(t);
  const auto x = static_cast<double>(t.x);
  const auto y = static_cast<double>(t.y);
  GeoPoint south_west{ColumnToLon(x, t.zoom), RowToLat(y + 1.0, t.zoom)};
  GeoPoint north_east{ColumnToLon(x + 1.0, t.zoom), RowToLat(y, t.zoom)};
  return {south_west, north_east};
}

GeoPoint TileCenter(const TileIndex& t) {
  ValidateTile(t);
  return GeoPoint{ColumnToLon(static_cast<double>(t.x) + 0.5, t.zoom),
                  RowToLat(static_cast<double>(t.y) + 0.5, t.zoom)};
}

double HaversineKm(const GeoPoint& a, const GeoPoint& b) {
  const double dlat = (b.lat - a.lat) * kDegToRad;
  const double dlon = (b.lon - a.lon) * kDegToRad;
  const double s1 = std::sin(dlat / 2.0);
  const double s2 = std::sin(dlon / 2.0);
  const double h = s1 * s1 + std::cos(a.lat * kDegToRad) * std::cos(b.lat * kDegToRad) * s2 * s2;
  return 2.0 * kEarthRadiusKm * std::asin(std::sqrt(std::min(1.0, h)));
}

}  // namespace sreval
