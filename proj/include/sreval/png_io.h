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

#ifndef SREVAL_PNG_IO_H_
#define SREVAL_PNG_IO_H_

#include <filesystem>

#include "sreval/raster.h"

namespace sreval {

// Decodes an 8-bit grey or RGB PNG. Samples are returned on the scale of
// `depth` (u8 values are divided by 255 for kF32Unit).
//
// Throws IoError when the file cannot be opened, CorruptImageError when the
// stream does not decode, and ValidationError for alpha channels or 16-bit
// samples.
Raster LoadRaster(const std::filesystem::path& path, Depth depth = Depth::kU8);

// Encodes as an 8-bit PNG, rounding samples to the nearest level.
void SaveRaster(const std::filesystem::path& path, const Raster& raster);

}  // namespace sreval

#endif  // SREVAL_PNG_IO_H_
