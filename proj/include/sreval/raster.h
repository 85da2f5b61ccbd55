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

#ifndef SREVAL_RASTER_H_
#define SREVAL_RASTER_H_

#include <cstddef>
#include <span>
#include <vector>

namespace sreval {

// Sample scale of a raster. kU8 samples live on the 0..255 scale and kF32Unit
// samples on 0..1. Samples are always stored as float so filtered u8 images
// keep their fractional values; quantization happens only when encoding.
enum class Depth { kU8, kF32Unit };

// Largest representable sample value: the metric data range L.
constexpr double MaxValue(Depth depth) {
  return depth == Depth::kU8 ? 255.0 : 1.0;
}

// Row-major image with interleaved channels (1 or 3).
class Raster {
 public:
  Raster() = default;

  // Zero-filled raster.
  Raster(int width, int height, int channels, Depth depth);

  // Takes ownership of `data`; throws ValidationError when its length is not
  // width * height * channels or a sample lies outside the depth's range.
  Raster(int width, int height, int channels, Depth depth, std::vector<float> data);

  static Raster Filled(int width, int height, int channels, Depth depth, float value);

  int width() const { return width_; }
  int height() const { return height_; }
  int channels() const { return channels_; }
  Depth depth() const { return depth_; }
  bool empty() const { return data_.empty(); }
  std::size_t size() const { return data_.size(); }

  float at(int x, int y, int c = 0) const { return data_[Index(x, y, c)]; }
  float& at(int x, int y, int c = 0) { return data_[Index(x, y, c)]; }

  std::span<const float> samples() const { return data_; }
  std::span<float> samples() { return data_; }

  // Same width, height, channel count and depth.
  bool SameShape(const Raster& other) const {
    return width_ == other.width_ && height_ == other.height_ &&
           channels_ == other.channels_ && depth_ == other.depth_;
  }

  // Rescales samples onto another depth's range (x/255 or x*255).
  Raster ConvertTo(Depth depth) const;

  // Clamps every sample into the depth's range in place.
  void ClampToRange();

  friend bool operator==(const Raster&, const Raster&) = default;

 private:
  std::size_t Index(int x, int y, int c) const {
    return (static_cast<std::size_t>(y) * width_ + x) * channels_ + c;
  }

  int width_ = 0;
  int height_ = 0;
  int channels_ = 0;
  Depth depth_ = Depth::kU8;
  std::vector<float> data_;
};

// Throws ValidationError naming `what` when the two rasters differ in shape.
void RequireSameShape(const Raster& a, const Raster& b, const char* what);

}  // namespace sreval

#endif  // SREVAL_RASTER_H_
