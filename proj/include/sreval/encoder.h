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

#ifndef SREVAL_ENCODER_H_
#define SREVAL_ENCODER_H_

#include <array>
#include <filesystem>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "sreval/errors.h"
#include "sreval/raster.h"

namespace sreval {

// Raised for encoder failures that are neither I/O nor input validation:
// an unparsable model, an output of the wrong width, non-finite features.
class EncoderError : public Error {
 public:
  using Error::Error;
};

// Configuration of a pluggable image encoder. Normally read from a small JSON
// manifest stored next to the model file:
//
//   {"model_path": "encoder.onnx", "input_size": 224,
//    "resize_method": "bicubic", "channel_means": [..3..],
//    "channel_stds": [..3..], "embedding_dim": 512}
struct EncoderSpec {
  std::filesystem::path model_path;
  int input_size = 224;
  std::string resize_method = "bicubic";
  std::array<double, 3> channel_means{};
  std::array<double, 3> channel_stds{1.0, 1.0, 1.0};
  int embedding_dim = 0;

  // Throws ValidationError when a field is out of range.
  void Validate() const;
};

// Parses a manifest; a relative model_path is resolved against the
// manifest's directory. Throws IoError / ValidationError.
EncoderSpec LoadEncoderSpec(const std::filesystem::path& manifest);

// Encoder input: planar float image, 3 x size x size, normalized.
struct ImageBlock {
  int size = 0;
  std::vector<float> data;
};

// Bicubic resize to input_size^2 (skipped when already that size), scale to
// [0, 1], then (x - mean_c) / std_c per channel. Requires 3 channels.
ImageBlock Preprocess(const Raster& raster, const EncoderSpec& spec);

struct EmbeddingVector {
  std::vector<float> values;
};

// Runs a batch of preprocessed blocks through a model. Implementations must
// be safe to call from several threads; they may serialize internally.
class EncoderBackend {
 public:
  virtual ~EncoderBackend() = default;

  // One output row per input block.
  virtual std::vector<std::vector<float>> Run(std::span<const ImageBlock> blocks) const = 0;
};

// Backend for models in the ONNX exchange format, executed by OpenCV's dnn
// module on the CPU.
std::shared_ptr<const EncoderBackend> LoadOnnxBackend(const std::filesystem::path& model_path);

class Encoder {
 public:
  Encoder(EncoderSpec spec, std::shared_ptr<const EncoderBackend> backend);

  // Loads the manifest and its ONNX model.
  static Encoder FromManifest(const std::filesystem::path& manifest);

  const EncoderSpec& spec() const { return spec_; }

  // Throws EncoderError when the backend returns the wrong width or a
  // non-finite value.
  EmbeddingVector Embed(const Raster& raster) const;

  // Same results as calling Embed per raster, run `batch_size` at a time.
  std::vector<EmbeddingVector> EmbedBatch(std::span<const Raster> rasters,
                                          int batch_size = 16) const;

 private:
  EmbeddingVector Check(std::vector<float> row) const;

  EncoderSpec spec_;
  std::shared_ptr<const EncoderBackend> backend_;
};

}  // namespace sreval

#endif  // SREVAL_ENCODER_H_
