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

#ifndef SREVAL_PIXEL_METRICS_H_
#define SREVAL_PIXEL_METRICS_H_

#include <limits>
#include <vector>

#include "sreval/raster.h"

namespace sreval {

// PSNR of identical images. Score files write it as the token `inf`.
inline constexpr double kInfiniteDb = std::numeric_limits<double>::infinity();

// Mean squared sample difference, accumulated in double. Both rasters must
// have the same shape and depth.
double Mse(const Raster& a, const Raster& b);

// 10 * log10(L^2 / mse); kInfiniteDb when mse is zero.
double PsnrFromMse(double mse, double data_range);

double Psnr(const Raster& a, const Raster& b, double data_range);

// Uses the depth's full range (255 or 1) as L.
double Psnr(const Raster& a, const Raster& b);

struct SsimParams {
  int window = 11;      // odd window side
  double sigma = 1.5;   // Gaussian window width
  double k1 = 0.01;
  double k2 = 0.03;
  double data_range = 0.0;  // L; 0 selects the raster depth's range
};

// Mean of the local SSIM map over all fully covered window positions,
// computed per channel with Gaussian-weighted statistics and averaged over
// channels. Throws ValidationError on shape mismatch or when the image is
// smaller than the window.
double Ssim(const Raster& a, const Raster& b, const SsimParams& params = {});

enum class BiasMode {
  kPerChannel,  // one additive bias per channel
  kLuminance,   // a single bias shared by every channel
};

struct CpsnrParams {
  int shift_radius = 3;
  int border_crop = -1;  // < 0 means "same as shift_radius"
  BiasMode bias_mode = BiasMode::kPerChannel;
  double data_range = 0.0;  // 0 selects the raster depth's range

  int EffectiveCrop() const { return border_crop < 0 ? shift_radius : border_crop; }
};

struct CpsnrResult {
  double db = 0.0;
  int dx = 0;  // winning shift: sr is sampled at hr position + (dx, dy)
  int dy = 0;
  std::vector<double> bias;  // added to sr at the winning shift
};

// Brightness- and misalignment-corrected PSNR. The hr image is cropped by
// border_crop pixels on every side; for each integer shift in
// [-r, r]^2 the matching sr window is bias-corrected by the mean residual
// and scored with PSNR. The best shift wins, earliest in row-major
// (dy, then dx) order on ties.
CpsnrResult CpsnrDetailed(const Raster& sr, const Raster& hr, const CpsnrParams& params = {});

inline double Cpsnr(const Raster& sr, const Raster& hr, const CpsnrParams& params = {}) {
  return CpsnrDetailed(sr, hr, params).db;
}

}  // namespace sreval

#endif  // SREVAL_PIXEL_METRICS_H_
