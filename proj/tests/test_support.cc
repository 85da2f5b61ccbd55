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

#include "test_support.h"

#include <cmath>
#include <fstream>
#include <limits>
#include <random>
#include <vector>

#include "sreval/random.h"

namespace sreval::testing {

TempDir::TempDir() {
  std::random_device rd;
  path_ = std::filesystem::temp_directory_path() /
          ("sreval_test_" + std::to_string(rd()) + "_" + std::to_string(rd()));
  std::filesystem::create_directories(path_);
}

TempDir::~TempDir() {
  std::error_code ec;
  std::filesystem::remove_all(path_, ec);
}

void WriteFile(const std::filesystem::path& path, std::string_view content) {
  std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  out << content;
}

Raster RandomRaster(int width, int height, int channels, Depth depth, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<float> data(static_cast<std::size_t>(width) * height * channels);
  for (float& v : data) v = static_cast<float>(rng.Uniform() * MaxValue(depth));
  return Raster(width, height, channels, depth, std::move(data));
}

std::filesystem::path ModelDir() { return SREVAL_MODEL_DIR; }
std::filesystem::path TestDataDir() { return SREVAL_TEST_DATA_DIR; }

double OracleSsim(const Raster& a, const Raster& b, int window, double sigma) {
  const long double range = MaxValue(a.depth());
  const long double c1 = std::pow(0.01L * range, 2);
  const long double c2 = std::pow(0.03L * range, 2);
  const int half = window / 2;

  std::vector<long double> w2(static_cast<std::size_t>(window) * window);
  long double wsum = 0.0L;
  for (int j = 0; j < window; ++j) {
    for (int i = 0; i < window; ++i) {
      const long double r2 = (i - half) * (i - half) + (j - half) * (j - half);
      w2[j * window + i] = std::exp(-r2 / (2.0L * sigma * sigma));
      wsum += w2[j * window + i];
    }
  }
  for (long double& v : w2) v /= wsum;

  long double total = 0.0L;
  for (int c = 0; c < a.channels(); ++c) {
    long double acc = 0.0L;
    int count = 0;
    for (int y0 = 0; y0 + window <= a.height(); ++y0) {
      for (int x0 = 0; x0 + window <= a.width(); ++x0) {
        long double ma = 0, mb = 0;
        for (int j = 0; j < window; ++j) {
          for (int i = 0; i < window; ++i) {
            ma += w2[j * window + i] * a.at(x0 + i, y0 + j, c);
            mb += w2[j * window + i] * b.at(x0 + i, y0 + j, c);
          }
        }
        long double va = 0, vb = 0, cov = 0;
        for (int j = 0; j < window; ++j) {
          for (int i = 0; i < window; ++i) {
            const long double da = a.at(x0 + i, y0 + j, c) - ma;
            const long double db = b.at(x0 + i, y0 + j, c) - mb;
            va += w2[j * window + i] * da * da;
            vb += w2[j * window + i] * db * db;
            cov += w2[j * window + i] * da * db;
          }
        }
        acc += ((2 * ma * mb + c1) * (2 * cov + c2)) / ((ma * ma + mb * mb + c1) * (va + vb + c2));
        ++count;
      }
    }
    total += acc / count;
  }
  return static_cast<double>(total / a.channels());
}

OracleShift OracleCpsnr(const Raster& sr, const Raster& hr, int radius, int crop,
                        BiasMode mode) {
  const long double range = MaxValue(hr.depth());
  const int nc = hr.channels();
  OracleShift best{-std::numeric_limits<double>::infinity(), 0, 0};
  for (int dy = -radius; dy <= radius; ++dy) {
    for (int dx = -radius; dx <= radius; ++dx) {
      // With the optimal additive bias the residual MSE is its variance.
      std::vector<long double> s(nc, 0.0L), s2(nc, 0.0L);
      long double n = 0;
      for (int y = crop; y < hr.height() - crop; ++y) {
        for (int x = crop; x < hr.width() - crop; ++x) {
          for (int c = 0; c < nc; ++c) {
            const long double d =
                static_cast<long double>(sr.at(x + dx, y + dy, c)) - hr.at(x, y, c);
            s[c] += d;
            s2[c] += d * d;
          }
          n += 1;
        }
      }
      long double mse = 0.0L;
      if (mode == BiasMode::kPerChannel) {
        for (int c = 0; c < nc; ++c) mse += s2[c] / n - (s[c] / n) * (s[c] / n);
        mse /= nc;
      } else {
        long double all = 0.0L, all2 = 0.0L;
        for (int c = 0; c < nc; ++c) {
          all += s[c];
          all2 += s2[c];
        }
        mse = all2 / (n * nc) - std::pow(all / (n * nc), 2);
      }
      const double db = mse <= 0 ? std::numeric_limits<double>::infinity()
                                 : static_cast<double>(10.0L * std::log10(range * range / mse));
      if (db > best.db) best = {db, dx, dy};
    }
  }
  return best;
}

}  // namespace sreval::testing
