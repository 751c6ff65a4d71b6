// include/silencelab/vad.h

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

#ifndef SILENCELAB_VAD_H_
#define SILENCELAB_VAD_H_

#include <cstdint>
#include <span>
#include <vector>

#include "silencelab/audio_io.h"

namespace silencelab {

enum class FrameLabel : uint8_t { kSilence = 0, kSpeech = 1 };

// Energy detector over fixed non-overlapping frames. A frame is speech when
// its RMS level in dBFS exceeds the effective threshold; with `adaptive` on
// the threshold is raised to track the clip's own noise floor:
//
//   effective = max(threshold_db, noise_floor_db + adaptive_margin_db)
//
// where noise_floor_db is the 10th percentile of the per-frame levels. A
// hangover pass then keeps up to `hangover_frames` frames of trailing
// context after each detected speech frame.
struct VadConfig {
  int frame_ms = 10;  // 10, 20 or 30
  double threshold_db = -40.0;
  int hangover_frames = 2;
  bool adaptive = true;
  double adaptive_margin_db = 10.0;

  void Validate() const;  // ConfigError on out-of-range fields
};

struct VadLabels {
  int frame_ms = 10;
  std::vector<FrameLabel> labels;

  int64_t num_frames() const { return static_cast<int64_t>(labels.size()); }
  int64_t CountSilence() const;
};

// Frame size in samples; ConfigError when frame_ms does not divide evenly
// into the sample rate.
int FrameSamples(int sample_rate, int frame_ms);

// RMS level in dBFS, clamped below at kDbfsFloor so digital silence stays
// finite and comparable.
constexpr double kDbfsFloor = -200.0;
double FrameRmsDbfs(std::span<const double> frame);

// Labels floor(n_samples / frame_samples) frames; a trailing partial frame
// gets no label. Empty clip -> empty labels.
VadLabels LabelFrames(const AudioClip &clip, const VadConfig &cfg);

// Maximal run of equal labels, end-exclusive frame indices.
struct Segment {
  FrameLabel kind;
  int64_t start_frame = 0;
  int64_t end_frame = 0;
};

// Segments partition [0, num_frames) in order, and adjacent segments always
// carry different labels.
std::vector<Segment> SegmentsFromLabels(const VadLabels &labels);

// Linear-interpolation percentile (numpy style), p in [0, 1].
// Sorts a copy; values must be non-empty.
double Percentile(std::vector<double> values, double p);

}  // namespace silencelab

#endif  // SILENCELAB_VAD_H_
