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

#include "sreval/image_ops.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "sreval/errors.h"

namespace sreval {

namespace {

// Keys cubic convolution kernel with a = -0.5.
double Cubic(double x) {
  constexpr double a = -0.5;
  x = std::abs(x);
  if (x < 1.0) return ((a + 2.0) * x - (a + 3.0)) * x * x + 1.0;
  if (x < 2.0) return (((x - 5.0) * x + 8.0) * x - 4.0) * a;
  return 0.0;
}

struct Taps {
  int first = 0;
  std::vector<double> weights;
};

// Resampling taps for each output coordinate along one axis.
std::vector<Taps> ComputeTaps(int in_size, int out_size) {
  const double scale = static_cast<double>(in_size) / out_size;
  const double filter_scale = std::max(scale, 1.0);
  const double support = 2.0 * filter_scale;
  std::vector<Taps> taps(out_size);
  for (int i = 0; i < out_size; ++i) {
    const double center = (i + 0.5) * scale;
    const int lo = std::max(0, static_cast<int>(std::floor(center - support + 0.5)));
    const int hi = std::min(in_size, static_cast<int>(std::floor(center + support + 0.5)));
    Taps& t = taps[i];
    t.first = lo;
    double total = 0.0;
    for (int x = lo; x < hi; ++x) {
      const double w = Cubic((x - center + 0.5) / filter_scale);
      t.weights.push_back(w);
      total += w;
    }
    if (total != 0.0) {
      for (double& w : t.weights) w /= total;
    }
  }
  return taps;
}

}  // namespace

std::vector<double> GaussianKernel(double sigma, int radius) {
  std::vector<double> k(2 * radius + 1);
  double total = 0.0;
  for (int i = -radius; i <= radius; ++i) {
    const double v = std::exp(-0.5 * (i * i) / (sigma * sigma));
    k[i + radius] = v;
    total += v;
  }
  for (double& v : k) v /= total;
  return k;
}

Raster Downsample(const Raster& r, int factor, ResampleMethod method) {
  if (factor < 2) {
    throw ValidationError("downsample factor must be >= 2, got " + std::to_string(factor));
  }
  if (r.width() % factor != 0 || r.height() % factor != 0) {
    throw ValidationError("downsample: " + std::to_string(r.width()) + "x" +
                          std::to_string(r.height()) + " not divisible by " +
                          std::to_string(factor));
  }
  const int w = r.width() / factor;
  const int h = r.height() / factor;
  if (method == ResampleMethod::kBicubic) return Resize(r, w, h);

  Raster out(w, h, r.channels(), r.depth());
  const double inv_area = 1.0 / (static_cast<double>(factor) * factor);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      for (int c = 0; c < r.channels(); ++c) {
        double sum = 0.0;
        for (int dy = 0; dy < factor; ++dy) {
          for (int dx = 0; dx < factor; ++dx) {
            sum += r.at(x * factor + dx, y * factor + dy, c);
          }
        }
        out.at(x, y, c) = static_cast<float>(sum * inv_area);
      }
    }
  }
  return out;
}

Raster GaussianBlur(const Raster& r, double sigma) {
  if (!(sigma > 0.0)) {
    throw ValidationError("gaussian blur sigma must be positive");
  }
  const int radius = static_cast<int>(std::ceil(3.0 * sigma));
  const std::vector<double> k = GaussianKernel(sigma, radius);
  const int w = r.width();
  const int h = r.height();
  const int nc = r.channels();

  // Horizontal pass into a double buffer, then vertical pass.
  std::vector<double> tmp(r.size());
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      for (int c = 0; c < nc; ++c) {
        double acc = 0.0;
        for (int i = -radius; i <= radius; ++i) {
          const int xx = std::clamp(x + i, 0, w - 1);
          acc += k[i + radius] * r.at(xx, y, c);
        }
        tmp[(static_cast<std::size_t>(y) * w + x) * nc + c] = acc;
      }
    }
  }
  Raster out(w, h, nc, r.depth());
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      for (int c = 0; c < nc; ++c) {
        double acc = 0.0;
        for (int i = -radius; i <= radius; ++i) {
          const int yy = std::clamp(y + i, 0, h - 1);
          acc += k[i + radius] * tmp[(static_cast<std::size_t>(yy) * w + x) * nc + c];
        }
        out.at(x, y, c) = static_cast<float>(acc);
      }
    }
  }
  out.ClampToRange();
  return out;
}

Raster Resize(const Raster& r, int width, int height) {
  if (width <= 0 || height <= 0) {
    throw ValidationError("resize target must be positive");
  }
  if (width == r.width() && height == r.height()) return r;
  const int nc = r.channels();
  const std::vector<Taps> xt = ComputeTaps(r.width(), width);
  const std::vector<Taps> yt = ComputeTaps(r.height(), height);

  std::vector<double> tmp(static_cast<std::size_t>(width) * r.height() * nc);
  for (int y = 0; y < r.height(); ++y) {
    for (int x = 0; x < width; ++x) {
      const Taps& t = xt[x];
      for (int c = 0; c < nc; ++c) {
        double acc = 0.0;
        for (std::size_t i = 0; i < t.weights.size(); ++i) {
          acc += t.weights[i] * r.at(t.first + static_cast<int>(i), y, c);
        }
        tmp[(static_cast<std::size_t>(y) * width + x) * nc + c] = acc;
      }
    }
  }
  Raster out(width, height, nc, r.depth());
  for (int y = 0; y < height; ++y) {
    const Taps& t = yt[y];
    for (int x = 0; x < width; ++x) {
      for (int c = 0; c < nc; ++c) {
        double acc = 0.0;
        for (std::size_t i = 0; i < t.weights.size(); ++i) {
          const std::size_t row = t.first + i;
          acc += t.weights[i] * tmp[(row * width + x) * nc + c];
        }
        out.at(x, y, c) = static_cast<float>(acc);
      }
    }
  }
  out.ClampToRange();
  return out;
}

}  // namespace sreval
