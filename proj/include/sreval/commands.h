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

#ifndef SREVAL_COMMANDS_H_
#define SREVAL_COMMANDS_H_

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "sreval/pixel_metrics.h"
#include "sreval/score_table.h"

namespace sreval::cli {

// Process exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitIo = 2;

// One row of an evaluation pairs file (`item,gt,model,output`). Relative
// image paths are resolved against the pairs file's directory.
struct EvalPair {
  std::string item;
  std::filesystem::path gt;
  std::string model;
  std::filesystem::path output;
};

std::vector<EvalPair> ReadEvalPairs(const std::filesystem::path& path);

struct EvalConfig {
  std::vector<EvalPair> pairs;
  std::vector<std::string> metrics = {"psnr", "ssim"};
  std::optional<std::filesystem::path> encoder_manifest;  // required for clipscore
  SsimParams ssim;
  CpsnrParams cpsnr;
  int jobs = 0;  // 0 selects the number of hardware threads
};

struct EvalError {
  std::string item;
  std::string model;
  std::string message;
};

struct EvalResult {
  ScoreTable scores;
  std::vector<EvalError> errors;  // pairs whose images could not be scored
};

// Scores every pair on a worker pool. Output is independent of `jobs`.
EvalResult Evaluate(const EvalConfig& config);

// Full command-line entry point. Returns the process exit code.
int Main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace sreval::cli

#endif  // SREVAL_COMMANDS_H_
