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

#include <algorithm>
#include <mutex>

#include <opencv2/core.hpp>
#include <opencv2/dnn.hpp>

#include "sreval/encoder.h"

namespace sreval {

namespace {

class OnnxBackend final : public EncoderBackend {
 public:
  explicit OnnxBackend(cv::dnn::Net net) : net_(std::move(net)) {}

  std::vector<std::vector<float>> Run(std::span<const ImageBlock> blocks) const override {
    if (blocks.empty()) return {};
    const int n = blocks.front().size;
    for (const ImageBlock& b : blocks) {
      if (b.size != n) throw ValidationError("all blocks in a batch must share one size");
    }
    const int shape[] = {static_cast<int>(blocks.size()), 3, n, n};
    cv::Mat input(4, shape, CV_32F);
    const std::size_t per_block = static_cast<std::size_t>(3) * n * n;
    for (std::size_t i = 0; i < blocks.size(); ++i) {
      std::copy(blocks[i].data.begin(), blocks[i].data.end(),
                input.ptr<float>() + i * per_block);
    }

    cv::Mat output;
    {
      // cv::dnn::Net keeps per-forward state; one inference at a time.
      std::lock_guard<std::mutex> lock(mu_);
      try {
        net_.setInput(input);
        output = net_.forward().clone();
      } catch (const cv::Exception& e) {
        throw EncoderError(std::string("encoder inference failed: ") + e.what());
      }
    }
    if (output.dims < 2 || output.size[0] != static_cast<int>(blocks.size())) {
      throw EncoderError("encoder output has an unexpected shape");
    }
    const std::size_t width = output.total() / blocks.size();
    std::vector<std::vector<float>> rows(blocks.size());
    const float* data = output.ptr<float>();
    for (std::size_t i = 0; i < blocks.size(); ++i) {
      rows[i].assign(data + i * width, data + (i + 1) * width);
    }
    return rows;
  }

 private:
  mutable std::mutex mu_;
  mutable cv::dnn::Net net_;
};

}  // namespace

std::shared_ptr<const EncoderBackend> LoadOnnxBackend(const std::filesystem::path& model_path) {
  std::error_code ec;
  if (!std::filesystem::is_regular_file(model_path, ec)) {
    throw IoError("encoder model not found: " + model_path.string());
  }
  cv::dnn::Net net;
  try {
    net = cv::dnn::readNetFromONNX(model_path.string());
  } catch (const cv::Exception& e) {
    throw EncoderError("cannot load encoder model " + model_path.string() + ": " + e.what());
  }
  if (net.empty()) throw EncoderError("encoder model is empty: " + model_path.string());
  net.setPreferableBackend(cv::dnn::DNN_BACKEND_OPENCV);
  net.setPreferableTarget(cv::dnn::DNN_TARGET_CPU);
  return std::make_shared<OnnxBackend>(std::move(net));
}

}  // namespace sreval
