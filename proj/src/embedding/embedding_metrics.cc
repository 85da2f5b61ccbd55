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

#include "sreval/embedding_metrics.h"

#include <algorithm>
#include <cmath>
#include <string>

namespace sreval {

namespace {

void RequireSameLength(std::span<const float> a, std::span<const float> b) {
  if (a.size() != b.size() || a.empty()) {
    throw ValidationError("embedding length mismatch: " + std::to_string(a.size()) + " vs " +
                          std::to_string(b.size()));
  }
}

}  // namespace

double CosineSimilarity(std::span<const float> a, std::span<const float> b) {
  RequireSameLength(a, b);
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += static_cast<double>(a[i]) * b[i];
    na += static_cast<double>(a[i]) * a[i];
    nb += static_cast<double>(b[i]) * b[i];
  }
  if (na == 0.0 || nb == 0.0) {
    throw EncoderError("zero-norm embedding; cosine similarity is undefined");
  }
  return std::clamp(dot / (std::sqrt(na) * std::sqrt(nb)), -1.0, 1.0);
}

double MeanAbsoluteDifference(std::span<const float> a, std::span<const float> b) {
  RequireSameLength(a, b);
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sum += std::abs(static_cast<double>(a[i]) - b[i]);
  }
  return sum / static_cast<double>(a.size());
}

double ClipScore(const Encoder& encoder, const Raster& gt, const Raster& sr) {
  const EmbeddingVector g = encoder.Embed(gt);
  const EmbeddingVector s = encoder.Embed(sr);
  return CosineSimilarity(g.values, s.values);
}

double ClipFeatureL1(const Encoder& encoder, const Raster& gt, const Raster& sr) {
  const EmbeddingVector g = encoder.Embed(gt);
  const EmbeddingVector s = encoder.Embed(sr);
  return MeanAbsoluteDifference(g.values, s.values);
}

}  // namespace sreval
