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

#include "sreval/raster.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "sreval/errors.h"

namespace sreval {

namespace {

void CheckGeometry(int width, int height, int channels) {
  if (width <= 0 || height <= 0) {
    throw ValidationError("raster dimensions must be positive, got " +
                          std::to_string(width) + "x" + std::to_string(height));
  }
  if (channels != 1 && channels != 3) {
    throw ValidationError("unsupported channel count " + std::to_string(channels));
  }
}

}  // namespace

Raster::Raster(int width, int height, int channels, Depth depth)
    : width_(width), height_(height), channels_(channels), depth_(depth) {
  CheckGeometry(width, height, channels);
  data_.assign(static_cast<std::size_t>(width) * height * channels, 0.0f);
}

Raster::Raster(int width, int height, int channels, Depth depth, std::vector<float> data)
    : width_(width), height_(height), channels_(channels), depth_(depth),
      data_(std::move(data)) {
  CheckGeometry(width, height, channels);
  const std::size_t expected = static_cast<std::size_t>(width) * height * channels;
  if (data_.size() != expected) {
    throw ValidationError("raster data holds " + std::to_string(data_.size()) +
                          " samples, expected " + std::to_string(expected));
  }
  const auto hi = static_cast<float>(MaxValue(depth));
  for (float v : data_) {
    if (!(v >= 0.0f && v <= hi)) {
      throw ValidationError("raster sample " + std::to_string(v) +
                            " outside [0, " + std::to_string(hi) + "]");
    }
  }
}

Raster Raster::Filled(int width, int height, int channels, Depth depth, float value) {
  if (!(value >= 0.0f && value <= static_cast<float>(MaxValue(depth)))) {
    throw ValidationError("fill value outside depth range");
  }
  Raster r(width, height, channels, depth);
  std::fill(r.data_.begin(), r.data_.end(), value);
  return r;
}

Raster Raster::ConvertTo(Depth depth) const {
  Raster out = *this;
  out.depth_ = depth;
  if (depth == depth_) return out;
  const float scale = depth == Depth::kF32Unit ? 1.0f / 255.0f : 255.0f;
  for (float& v : out.data_) v *= scale;
  out.ClampToRange();
  return out;
}

void Raster::ClampToRange() {
  const auto hi = static_cast<float>(MaxValue(depth_));
  for (float& v : data_) v = std::clamp(v, 0.0f, hi);
}

void RequireSameShape(const Raster& a, const Raster& b, const char* what) {
  if (!a.SameShape(b)) {
    throw ValidationError(std::string(what) + ": shape mismatch (" +
                          std::to_string(a.width()) + "x" + std::to_string(a.height()) +
                          "x" + std::to_string(a.channels()) + " vs " +
                          std::to_string(b.width()) + "x" + std::to_string(b.height()) +
                          "x" + std::to_string(b.channels()) + ")");
  }
}

}  // namespace sreval
