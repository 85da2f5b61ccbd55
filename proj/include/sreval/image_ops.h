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

#ifndef SREVAL_IMAGE_OPS_H_
#define SREVAL_IMAGE_OPS_H_

#include <vector>

#include "sreval/raster.h"

namespace sreval {

enum class ResampleMethod { kBox, kBicubic };

// Normalized 1-D Gaussian weights on [-radius, radius].
std::vector<double> GaussianKernel(double sigma, int radius);

// Reduces both dimensions by `factor` (>= 2). Box averages each
// factor x factor block exactly; bicubic delegates to Resize. Throws
// ValidationError when a dimension is not divisible by the factor.
Raster Downsample(const Raster& r, int factor, ResampleMethod method = ResampleMethod::kBox);

// Separable Gaussian blur with kernel radius ceil(3 * sigma) and
// clamp-to-edge borders. Throws ValidationError for sigma <= 0.
Raster GaussianBlur(const Raster& r, double sigma);

// Separable bicubic resampling (Keys kernel, a = -0.5). When shrinking, the
// kernel support widens with the scale factor so the result is antialiased.
// Returns the input unchanged when the size already matches.
Raster Resize(const Raster& r, int width, int height);

}  // namespace sreval

#endif  // SREVAL_IMAGE_OPS_H_
