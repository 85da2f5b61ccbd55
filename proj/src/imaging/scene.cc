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

#include "sreval/scene.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <vector>

#include "sreval/random.h"

namespace sreval {

namespace {

using Rgb = std::array<double, 3>;

// Bilinear value noise over a (cells + 1)^2 lattice of random values.
class ValueNoise {
 public:
  ValueNoise(Rng& rng, int cells) : cells_(cells), lattice_((cells + 1) * (cells + 1)) {
    for (double& v : lattice_) v = rng.Uniform();
  }

  // u, v in [0, 1].
  double Sample(double u, double v) const {
    const double fx = u * cells_;
    const double fy = v * cells_;
    const int x0 = std::min(static_cast<int>(fx), cells_ - 1);
    const int y0 = std::min(static_cast<int>(fy), cells_ - 1);
    const double tx = Smooth(fx - x0);
    const double ty = Smooth(fy - y0);
    const double a = At(x0, y0) * (1 - tx) + At(x0 + 1, y0) * tx;
    const double b = At(x0, y0 + 1) * (1 - tx) + At(x0 + 1, y0 + 1) * tx;
    return a * (1 - ty) + b * ty;
  }

 private:
  static double Smooth(double t) { return t * t * (3.0 - 2.0 * t); }
  double At(int x, int y) const { return lattice_[y * (cells_ + 1) + x]; }

  int cells_;
  std::vector<double> lattice_;
};

constexpr std::array<Rgb, 5> kLandCover = {{
    {86, 118, 62},    // grass
    {164, 148, 104},  // dry field
    {46, 72, 44},     // forest
    {122, 100, 78},   // bare soil
    {138, 150, 96},   // crops
}};

constexpr std::array<Rgb, 4> kRoofs = {{
    {150, 150, 155},
    {160, 84, 70},
    {215, 212, 205},
    {92, 88, 96},
}};

Rgb Lerp(const Rgb& a, const Rgb& b, double t) {
  return {a[0] + (b[0] - a[0]) * t, a[1] + (b[1] - a[1]) * t, a[2] + (b[2] - a[2]) * t};
}

// Point-in-rotated-rectangle test in local coordinates.
bool InsideRect(double x, double y, double cx, double cy, double hw, double hh, double c,
                double s, double* lu = nullptr) {
  const double dx = x - cx;
  const double dy = y - cy;
  const double u = dx * c + dy * s;
  const double v = -dx * s + dy * c;
  if (lu) *lu = u;
  return std::abs(u) <= hw && std::abs(v) <= hh;
}

}  // namespace

Raster SynthesizeScene(std::uint64_t seed, int size) {
  Rng rng(Mix64(seed));
  const ValueNoise cover(rng, 3);
  const ValueNoise cover2(rng, 5);
  std::vector<ValueNoise> octaves;
  for (int cells : {4, 8, 16, 32, 64}) octaves.emplace_back(rng, cells);

  const int n = size;
  std::vector<Rgb> img(static_cast<std::size_t>(n) * n);
  const int a = static_cast<int>(rng.UniformInt(kLandCover.size()));
  const int b = static_cast<int>(rng.UniformInt(kLandCover.size()));
  const int c2 = static_cast<int>(rng.UniformInt(kLandCover.size()));
  for (int y = 0; y < n; ++y) {
    for (int x = 0; x < n; ++x) {
      const double u = (x + 0.5) / n;
      const double v = (y + 0.5) / n;
      double detail = 0.0;
      double amp = 0.5;
      for (const ValueNoise& o : octaves) {
        detail += amp * (o.Sample(u, v) - 0.5);
        amp *= 0.6;
      }
      const double t1 = std::clamp((cover.Sample(u, v) - 0.3) * 2.5, 0.0, 1.0);
      const double t2 = std::clamp((cover2.Sample(u, v) - 0.55) * 4.0, 0.0, 1.0);
      Rgb px = Lerp(Lerp(kLandCover[a], kLandCover[b], t1), kLandCover[c2], t2);
      for (double& ch : px) ch *= 1.0 + 0.9 * detail;
      img[static_cast<std::size_t>(y) * n + x] = px;
    }
  }

  // Striped fields.
  const int fields = 1 + static_cast<int>(rng.UniformInt(3));
  for (int f = 0; f < fields; ++f) {
    const double cx = rng.Uniform(0, n), cy = rng.Uniform(0, n);
    const double hw = rng.Uniform(0.12, 0.3) * n, hh = rng.Uniform(0.1, 0.25) * n;
    const double ang = rng.Uniform(0, std::numbers::pi);
    const double period = rng.Uniform(3.0, 7.0);
    const Rgb tone = kLandCover[rng.UniformInt(kLandCover.size())];
    const double cs = std::cos(ang), sn = std::sin(ang);
    for (int y = 0; y < n; ++y) {
      for (int x = 0; x < n; ++x) {
        double lu = 0;
        if (!InsideRect(x + 0.5, y + 0.5, cx, cy, hw, hh, cs, sn, &lu)) continue;
        const double stripe = 0.5 + 0.5 * std::sin(2.0 * std::numbers::pi * lu / period);
        Rgb& px = img[static_cast<std::size_t>(y) * n + x];
        px = Lerp(px, Lerp(tone, {tone[0] * 0.75, tone[1] * 0.75, tone[2] * 0.75}, stripe), 0.8);
      }
    }
  }

  // Roads: straight bands crossing the tile.
  const int roads = 1 + static_cast<int>(rng.UniformInt(2));
  for (int r = 0; r < roads; ++r) {
    const double px0 = rng.Uniform(0, n), py0 = rng.Uniform(0, n);
    const double ang = rng.Uniform(0, std::numbers::pi);
    const double half = rng.Uniform(1.0, 2.5) * n / 128.0;
    const double nx = -std::sin(ang), ny = std::cos(ang);
    const double shade = rng.Uniform(95, 140);
    for (int y = 0; y < n; ++y) {
      for (int x = 0; x < n; ++x) {
        const double d = std::abs((x + 0.5 - px0) * nx + (y + 0.5 - py0) * ny);
        if (d > half + 1.0) continue;
        const double cover_t = std::clamp(half + 1.0 - d, 0.0, 1.0);
        Rgb& p = img[static_cast<std::size_t>(y) * n + x];
        p = Lerp(p, {shade, shade, shade + 4}, cover_t);
      }
    }
  }

  // Buildings with a shadow cast toward the lower right.
  const int buildings = 6 + static_cast<int>(rng.UniformInt(14));
  const double shadow = std::max(1.0, n / 64.0);
  for (int k = 0; k < buildings; ++k) {
    const double cx = rng.Uniform(0, n), cy = rng.Uniform(0, n);
    const double hw = rng.Uniform(2.0, 7.0) * n / 128.0;
    const double hh = rng.Uniform(2.0, 7.0) * n / 128.0;
    const double ang = rng.Uniform(0, std::numbers::pi / 2);
    const Rgb roof = kRoofs[rng.UniformInt(kRoofs.size())];
    const double cs = std::cos(ang), sn = std::sin(ang);
    for (int y = 0; y < n; ++y) {
      for (int x = 0; x < n; ++x) {
        Rgb& p = img[static_cast<std::size_t>(y) * n + x];
        if (InsideRect(x + 0.5, y + 0.5, cx, cy, hw, hh, cs, sn)) {
          // Two-tone roof split along the ridge.
          const double side = ((x + 0.5 - cx) * -sn + (y + 0.5 - cy) * cs) >= 0 ? 1.0 : 0.85;
          p = {roof[0] * side, roof[1] * side, roof[2] * side};
        } else if (InsideRect(x + 0.5 - shadow, y + 0.5 - shadow, cx, cy, hw, hh, cs, sn)) {
          p = {p[0] * 0.45, p[1] * 0.45, p[2] * 0.5};
        }
      }
    }
  }

  Raster out(n, n, 3, Depth::kU8);
  for (int y = 0; y < n; ++y) {
    for (int x = 0; x < n; ++x) {
      const Rgb& p = img[static_cast<std::size_t>(y) * n + x];
      const double grain = rng.Uniform(-6.0, 6.0);
      for (int c = 0; c < 3; ++c) {
        out.at(x, y, c) = static_cast<float>(std::clamp(std::round(p[c] + grain), 0.0, 255.0));
      }
    }
  }
  return out;
}

}  // namespace sreval
