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

#ifndef SREVAL_SCENE_H_
#define SREVAL_SCENE_H_

#include <cstdint>

#include "sreval/raster.h"

namespace sreval {

// Procedural aerial-style RGB test scene: land-cover patches with fractal
// texture, striped fields, roads and shadowed building footprints. The same
// seed and size always produce the same u8 raster.
Raster SynthesizeScene(std::uint64_t seed, int size = 128);

}  // namespace sreval

#endif  // SREVAL_SCENE_H_
