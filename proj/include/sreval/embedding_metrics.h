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

#ifndef SREVAL_EMBEDDING_METRICS_H_
#define SREVAL_EMBEDDING_METRICS_H_

#include <span>

#include "sreval/encoder.h"
#include "sreval/raster.h"

namespace sreval {

// Cosine of the angle between two feature vectors, clamped to [-1, 1].
// Throws EncoderError when either vector has zero norm and
// ValidationError when the lengths differ.
double CosineSimilarity(std::span<const float> a, std::span<const float> b);

// Mean absolute difference of two equal-length feature vectors.
double MeanAbsoluteDifference(std::span<const float> a, std::span<const float> b);

// CLIPScore: cosine similarity between the encoder embeddings of the target
// and the super-resolved output.
double ClipScore(const Encoder& encoder, const Raster& gt, const Raster& sr);

// L1 distance between the two embeddings (mean absolute difference), the
// value a trainer minimizes when using encoder features as a loss.
double ClipFeatureL1(const Encoder& encoder, const Raster& gt, const Raster& sr);

}  // namespace sreval

#endif  // SREVAL_EMBEDDING_METRICS_H_
