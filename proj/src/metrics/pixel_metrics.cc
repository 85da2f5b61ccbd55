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

#include "sreval/pixel_metrics.h"

#include <cmath>
#include <string>

#include "sreval/errors.h"
#include "sreval/image_ops.h"

namespace sreval {

namespace {

double RangeOrDefault(double data_range, const Raster& r) {
  return data_range > 0.0 ? data_range : MaxValue(r.depth());
}

// "Valid" separable filtering of one channel-plane (stored as double,
// row-major, width w) with a symmetric kernel; output is (w-k+1)x(h-k+1).
std::vector<double> FilterValid(const std::vector<double>& plane, int w, int h,
                                const std::vector<double>& k) {
  const int n = static_cast<int>(k.size());
  const int ow = w - n + 1;
  const int oh = h - n + 1;
  std::vector<double> rows(static_cast<std::size_t>(ow) * h);
  for (int y = 0; y < h; ++y) {
    const double* src = plane.data() + static_cast<std::size_t>(y) * w;
    for (int x = 0; x < ow; ++x) {
      double acc = 0.0;
      for (int i = 0; i < n; ++i) acc += k[i] * src[x + i];
      rows[static_cast<std::size_t>(y) * ow + x] = acc;
    }
  }
  std::vector<double> out(static_cast<std::size_t>(ow) * oh);
  for (int y = 0; y < oh; ++y) {
    for (int x = 0; x < ow; ++x) {
      double acc = 0.0;
      for (int i = 0; i < n; ++i) acc += k[i] * rows[static_cast<std::size_t>(y + i) * ow + x];
      out[static_cast<std::size_t>(y) * ow + x] = acc;
    }
  }
  return out;
}

}  // namespace

double Mse(const Raster& a, const Raster& b) {
  RequireSameShape(a, b, "mse");
  const auto sa = a.samples();
  const auto sb = b.samples();
  double sum = 0.0;
  for (std::size_t i = 0; i < sa.size(); ++i) {
    const double d = static_cast<double>(sa[i]) - sb[i];
    sum += d * d;
  }
  return sum / static_cast<double>(sa.size());
}

double PsnrFromMse(double mse, double data_range) {
  if (mse <= 0.0) return kInfiniteDb;
  return 10.0 * std::log10(data_range * data_range / mse);
}

double Psnr(const Raster& a, const Raster& b, double data_range) {
  if (!(data_range > 0.0)) throw ValidationError("psnr data range must be positive");
  return PsnrFromMse(Mse(a, b), data_range);
}

double Psnr(const Raster& a, const Raster& b) { return Psnr(a, b, MaxValue(a.depth())); }

double Ssim(const Raster& a, const Raster& b, const SsimParams& params) {
  RequireSameShape(a, b, "ssim");
  if (params.window < 1 || params.window % 2 == 0) {
    throw ValidationError("ssim window must be a positive odd size");
  }
  if (!(params.sigma > 0.0) || !(params.k1 > 0.0) || !(params.k2 > 0.0)) {
    throw ValidationError("ssim sigma, k1 and k2 must be positive");
  }
  const int w = a.width();
  const int h = a.height();
  if (w < params.window || h < params.window) {
    throw ValidationError("ssim: image " + std::to_string(w) + "x" + std::to_string(h) +
                          " smaller than the " + std::to_string(params.window) + "px window");
  }
  const double range = RangeOrDefault(params.data_range, a);
  const double c1 = (params.k1 * range) * (params.k1 * range);
  const double c2 = (params.k2 * range) * (params.k2 * range);
  const std::vector<double> kernel = GaussianKernel(params.sigma, params.window / 2);

  const std::size_t plane_size = static_cast<std::size_t>(w) * h;
  std::vector<double> pa(plane_size), pb(plane_size), paa(plane_size), pbb(plane_size),
      pab(plane_size);
  double total = 0.0;
  for (int c = 0; c < a.channels(); ++c) {
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) {
        const std::size_t i = static_cast<std::size_t>(y) * w + x;
        const double va = a.at(x, y, c);
        const double vb = b.at(x, y, c);
        pa[i] = va;
        pb[i] = vb;
        paa[i] = va * va;
        pbb[i] = vb * vb;
        pab[i] = va * vb;
      }
    }
    const auto mu_a = FilterValid(pa, w, h, kernel);
    const auto mu_b = FilterValid(pb, w, h, kernel);
    const auto e_aa = FilterValid(paa, w, h, kernel);
    const auto e_bb = FilterValid(pbb, w, h, kernel);
    const auto e_ab = FilterValid(pab, w, h, kernel);
    double channel_sum = 0.0;
    for (std::size_t i = 0; i < mu_a.size(); ++i) {
      const double ma = mu_a[i];
      const double mb = mu_b[i];
      const double var_a = e_aa[i] - ma * ma;
      const double var_b = e_bb[i] - mb * mb;
      const double cov = e_ab[i] - ma * mb;
      channel_sum += ((2.0 * ma * mb + c1) * (2.0 * cov + c2)) /
                     ((ma * ma + mb * mb + c1) * (var_a + var_b + c2));
    }
    total += channel_sum / static_cast<double>(mu_a.size());
  }
  return total / a.channels();
}

CpsnrResult CpsnrDetailed(const Raster& sr, const Raster& hr, const CpsnrParams& params) {
  RequireSameShape(sr, hr, "cpsnr");
  const int r = params.shift_radius;
  const int crop = params.EffectiveCrop();
  if (r < 0) throw ValidationError("cpsnr shift radius must be >= 0");
  if (crop < r) {
    throw ValidationError("cpsnr border crop " + std::to_string(crop) +
                          " smaller than shift radius " + std::to_string(r));
  }
  const int w = hr.width();
  const int h = hr.height();
  if (w <= 2 * crop || h <= 2 * crop) {
    throw ValidationError("cpsnr: border crop " + std::to_string(crop) + " exhausts a " +
                          std::to_string(w) + "x" + std::to_string(h) + " image");
  }
  const double range = RangeOrDefault(params.data_range, hr);
  const int nc = hr.channels();
  const int cw = w - 2 * crop;
  const int ch = h - 2 * crop;
  const double per_channel = static_cast<double>(cw) * ch;

  CpsnrResult best;
  best.db = -std::numeric_limits<double>::infinity();
  std::vector<double> bias(nc);
  for (int dy = -r; dy <= r; ++dy) {
    for (int dx = -r; dx <= r; ++dx) {
      // Pass 1: mean residual hr - sr over the window.
      std::vector<double> sums(nc, 0.0);
      for (int y = crop; y < crop + ch; ++y) {
        for (int x = crop; x < crop + cw; ++x) {
          for (int c = 0; c < nc; ++c) {
            sums[c] += static_cast<double>(hr.at(x, y, c)) - sr.at(x + dx, y + dy, c);
          }
        }
      }
      if (params.bias_mode == BiasMode::kPerChannel) {
        for (int c = 0; c < nc; ++c) bias[c] = sums[c] / per_channel;
      } else {
        double all = 0.0;
        for (double s : sums) all += s;
        for (int c = 0; c < nc; ++c) bias[c] = all / (per_channel * nc);
      }
      // Pass 2: squared error after bias correction.
      double sq = 0.0;
      for (int y = crop; y < crop + ch; ++y) {
        for (int x = crop; x < crop + cw; ++x) {
          for (int c = 0; c < nc; ++c) {
            const double d = sr.at(x + dx, y + dy, c) + bias[c] - hr.at(x, y, c);
            sq += d * d;
          }
        }
      }
      const double db = PsnrFromMse(sq / (per_channel * nc), range);
      if (db > best.db) {
        best.db = db;
        best.dx = dx;
        best.dy = dy;
        best.bias = bias;
      }
    }
  }
  return best;
}

}  // namespace sreval
