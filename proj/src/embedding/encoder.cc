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

#include "sreval/encoder.h"

#include <algorithm>
#include <cmath>

#include "json.hpp"

#include "sreval/csv.h"
#include "sreval/image_ops.h"

namespace sreval {

void EncoderSpec::Validate() const {
  if (input_size <= 0) throw ValidationError("encoder input_size must be positive");
  if (embedding_dim <= 0) throw ValidationError("encoder embedding_dim must be positive");
  if (resize_method != "bicubic") {
    throw ValidationError("unsupported encoder resize_method '" + resize_method + "'");
  }
  for (double s : channel_stds) {
    if (!(s > 0.0)) throw ValidationError("encoder channel_stds must be positive");
  }
  for (double m : channel_means) {
    if (!std::isfinite(m)) throw ValidationError("encoder channel_means must be finite");
  }
}

EncoderSpec LoadEncoderSpec(const std::filesystem::path& manifest) {
  const std::string text = ReadTextFile(manifest);
  EncoderSpec spec;
  try {
    const auto j = nlohmann::json::parse(text);
    spec.model_path = j.at("model_path").get<std::string>();
    spec.input_size = j.at("input_size").get<int>();
    spec.resize_method = j.value("resize_method", std::string("bicubic"));
    spec.channel_means = j.at("channel_means").get<std::array<double, 3>>();
    spec.channel_stds = j.at("channel_stds").get<std::array<double, 3>>();
    spec.embedding_dim = j.at("embedding_dim").get<int>();
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError("encoder manifest " + manifest.string() + ": " + e.what());
  }
  if (spec.model_path.is_relative()) {
    spec.model_path = manifest.parent_path() / spec.model_path;
  }
  spec.Validate();
  return spec;
}

ImageBlock Preprocess(const Raster& raster, const EncoderSpec& spec) {
  if (raster.channels() != 3) {
    throw ValidationError("encoder input must have 3 channels, got " +
                          std::to_string(raster.channels()));
  }
  const int n = spec.input_size;
  const Raster resized = Resize(raster, n, n);
  const double to_unit = 1.0 / MaxValue(resized.depth());
  ImageBlock block;
  block.size = n;
  block.data.resize(static_cast<std::size_t>(3) * n * n);
  for (int c = 0; c < 3; ++c) {
    const double mean = spec.channel_means[c];
    const double inv_std = 1.0 / spec.channel_stds[c];
    float* plane = block.data.data() + static_cast<std::size_t>(c) * n * n;
    for (int y = 0; y < n; ++y) {
      for (int x = 0; x < n; ++x) {
        plane[static_cast<std::size_t>(y) * n + x] =
            static_cast<float>((resized.at(x, y, c) * to_unit - mean) * inv_std);
      }
    }
  }
  return block;
}

Encoder::Encoder(EncoderSpec spec, std::shared_ptr<const EncoderBackend> backend)
    : spec_(std::move(spec)), backend_(std::move(backend)) {
  spec_.Validate();
  if (!backend_) throw ValidationError("encoder backend is null");
}

Encoder Encoder::FromManifest(const std::filesystem::path& manifest) {
  EncoderSpec spec = LoadEncoderSpec(manifest);
  auto backend = LoadOnnxBackend(spec.model_path);
  return Encoder(std::move(spec), std::move(backend));
}

EmbeddingVector Encoder::Check(std::vector<float> row) const {
  if (static_cast<int>(row.size()) != spec_.embedding_dim) {
    throw EncoderError("encoder produced " + std::to_string(row.size()) +
                       " features, manifest declares " + std::to_string(spec_.embedding_dim));
  }
  for (float v : row) {
    if (!std::isfinite(v)) throw EncoderError("encoder produced a non-finite feature");
  }
  return EmbeddingVector{std::move(row)};
}

EmbeddingVector Encoder::Embed(const Raster& raster) const {
  const ImageBlock block = Preprocess(raster, spec_);
  auto rows = backend_->Run(std::span<const ImageBlock>(&block, 1));
  if (rows.size() != 1) throw EncoderError("encoder returned the wrong number of rows");
  return Check(std::move(rows.front()));
}

std::vector<EmbeddingVector> Encoder::EmbedBatch(std::span<const Raster> rasters,
                                                 int batch_size) const {
  if (batch_size < 1) throw ValidationError("batch size must be >= 1");
  std::vector<EmbeddingVector> out;
  out.reserve(rasters.size());
  std::vector<ImageBlock> blocks;
  for (std::size_t start = 0; start < rasters.size(); start += batch_size) {
    const std::size_t end = std::min(rasters.size(), start + static_cast<std::size_t>(batch_size));
    blocks.clear();
    for (std::size_t i = start; i < end; ++i) blocks.push_back(Preprocess(rasters[i], spec_));
    auto rows = backend_->Run(blocks);
    if (rows.size() != blocks.size()) {
      throw EncoderError("encoder returned the wrong number of rows");
    }
    for (auto& row : rows) out.push_back(Check(std::move(row)));
  }
  return out;
}

}  // namespace sreval
