// include/silencelab/pipeline.h

// Copyright 2026  SilenceLab Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef SILENCELAB_PIPELINE_H_
#define SILENCELAB_PIPELINE_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"
#include "silencelab/vad.h"

namespace silencelab {

// One processing step. Parameters are kept as parsed JSON; they are
// validated against the per-op schema when the config is constructed.
struct PipelineStep {
  std::string op;
  nlohmann::json params;  // object; op key already removed
};

enum class OutputDepth { kPreserve, kInt16, kFloat32 };

// Batch configuration. Clips are processed independently, so the run can be
// spread over workers; every random decision is derived from (seed, utt_id)
// and the step index, never from scheduling order.
struct PipelineConfig {
  std::filesystem::path manifest;
  std::filesystem::path audio_dir;
  std::filesystem::path output_dir;
  uint64_t seed = 0;
  int workers = 1;
  VadConfig vad;
  OutputDepth output_depth = OutputDepth::kPreserve;
  std::vector<PipelineStep> steps;

  void Validate() const;
  static PipelineConfig FromJsonFile(const std::filesystem::path &path);
};

struct PipelineFailure {
  std::string utt_id;
  std::string error;
};

struct PipelineRunReport {
  int64_t n_ok = 0;
  int64_t n_failed = 0;
  std::vector<PipelineFailure> failures;  // sorted by utt_id
};

// Runs every step on every manifest entry and writes the processed corpus
// under output_dir (wav/, optional features/ and scores.txt, manifest.txt,
// report.json). Per-clip errors are collected, not fatal.
PipelineRunReport RunPipeline(const PipelineConfig &config);

}  // namespace silencelab

#endif  // SILENCELAB_PIPELINE_H_
