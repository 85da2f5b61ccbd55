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

#include "sreval/png_io.h"

#include <png.h>

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <memory>
#include <string>
#include <vector>

#include "sreval/errors.h"

namespace sreval {

namespace {

struct FileCloser {
  void operator()(std::FILE* f) const { std::fclose(f); }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

struct ImageGuard {
  png_image* image;
  ~ImageGuard() { png_image_free(image); }
};

}  // namespace

Raster LoadRaster(const std::filesystem::path& path, Depth depth) {
  FilePtr file(std::fopen(path.c_str(), "rb"));
  if (!file) {
    throw IoError("cannot open " + path.string() + ": " + std::strerror(errno));
  }

  png_image image;
  std::memset(&image, 0, sizeof(image));
  image.version = PNG_IMAGE_VERSION;
  ImageGuard guard{&image};
  if (!png_image_begin_read_from_stdio(&image, file.get())) {
    throw CorruptImageError("cannot decode " + path.string() + ": " + image.message);
  }
  if (image.format & PNG_FORMAT_FLAG_ALPHA) {
    throw ValidationError(path.string() + ": unsupported channel count (alpha channel)");
  }
  if (image.format & PNG_FORMAT_FLAG_LINEAR) {
    throw ValidationError(path.string() + ": only 8-bit PNG samples are supported");
  }
  const int channels = (image.format & PNG_FORMAT_FLAG_COLOR) ? 3 : 1;
  image.format = channels == 3 ? PNG_FORMAT_RGB : PNG_FORMAT_GRAY;

  const int width = static_cast<int>(image.width);
  const int height = static_cast<int>(image.height);
  std::vector<std::uint8_t> buffer(PNG_IMAGE_SIZE(image));
  if (!png_image_finish_read(&image, nullptr, buffer.data(), 0, nullptr)) {
    throw CorruptImageError("corrupt stream in " + path.string() + ": " + image.message);
  }

  const float scale = depth == Depth::kF32Unit ? 1.0f / 255.0f : 1.0f;
  std::vector<float> data(buffer.size());
  for (std::size_t i = 0; i < buffer.size(); ++i) data[i] = buffer[i] * scale;
  return Raster(width, height, channels, depth, std::move(data));
}

void SaveRaster(const std::filesystem::path& path, const Raster& raster) {
  if (raster.empty()) throw ValidationError("cannot encode an empty raster");
  const double to_u8 = 255.0 / MaxValue(raster.depth());
  std::vector<std::uint8_t> buffer(raster.size());
  const auto samples = raster.samples();
  for (std::size_t i = 0; i < buffer.size(); ++i) {
    const double v = std::round(samples[i] * to_u8);
    buffer[i] = static_cast<std::uint8_t>(std::clamp(v, 0.0, 255.0));
  }

  png_image image;
  std::memset(&image, 0, sizeof(image));
  image.version = PNG_IMAGE_VERSION;
  image.width = static_cast<png_uint_32>(raster.width());
  image.height = static_cast<png_uint_32>(raster.height());
  image.format = raster.channels() == 3 ? PNG_FORMAT_RGB : PNG_FORMAT_GRAY;
  ImageGuard guard{&image};
  if (!png_image_write_to_file(&image, path.c_str(), 0, buffer.data(), 0, nullptr)) {
    throw IoError("cannot write " + path.string() + ": " + image.message);
  }
}

}  // namespace sreval
