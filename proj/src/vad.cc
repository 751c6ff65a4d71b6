// src/vad.cc

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

#include "silencelab/vad.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "silencelab/error.h"

namespace silencelab {

void VadConfig::Validate() const {
  if (frame_ms != 10 && frame_ms != 20 && frame_ms != 30) {
    throw ConfigError("frame_ms must be 10, 20 or 30, got " +
                      std::to_string(frame_ms));
  }
  if (hangover_frames < 0) throw ConfigError("hangover_frames must be >= 0");
  if (!std::isfinite(threshold_db) || !std::isfinite(adaptive_margin_db)) {
    throw ConfigError("non-finite VAD threshold");
  }
}

int64_t VadLabels::CountSilence() const {
  return std::count(labels.begin(), labels.end(), FrameLabel::kSilence);
}

int FrameSamples(int sample_rate, int frame_ms) {
  const int64_t numer = static_cast<int64_t>(sample_rate) * frame_ms;
  if (sample_rate <= 0 || numer % 1000 != 0) {
    throw ConfigError("frame of " + std::to_string(frame_ms) +
                      " ms does not divide a rate of " +
                      std::to_string(sample_rate) + " Hz evenly");
  }
  return static_cast<int>(numer / 1000);
}

double FrameRmsDbfs(std::span<const double> frame) {
  double acc = 0.0;
  for (double s : frame) acc += s * s;
  const double rms = std::sqrt(acc / static_cast<double>(frame.size()));
  if (rms <= 0.0) return kDbfsFloor;
  return std::max(kDbfsFloor, 20.0 * std::log10(rms));
}

double Percentile(std::vector<double> values, double p) {
  std::sort(values.begin(), values.end());
  const double rank = p * static_cast<double>(values.size() - 1);
  const size_t lo = static_cast<size_t>(rank);
  if (lo + 1 >= values.size()) return values.back();
  const double frac = rank - static_cast<double>(lo);
  return values[lo] + frac * (values[lo + 1] - values[lo]);
}

VadLabels LabelFrames(const AudioClip &clip, const VadConfig &cfg) {
  cfg.Validate();
  const int frame = FrameSamples(clip.sample_rate, cfg.frame_ms);

  VadLabels out;
  out.frame_ms = cfg.frame_ms;
  const int64_t n = clip.num_samples() / frame;
  if (n == 0) return out;

  std::vector<double> level(n);
  for (int64_t i = 0; i < n; ++i) {
    level[i] = FrameRmsDbfs(
        std::span<const double>(clip.samples.data() + i * frame, frame));
  }

  double effective = cfg.threshold_db;
  if (cfg.adaptive) {
    const double noise_floor = Percentile(level, 0.10);
    effective = std::max(cfg.threshold_db, noise_floor + cfg.adaptive_margin_db);
  }

  out.labels.resize(n);
  for (int64_t i = 0; i < n; ++i) {
    out.labels[i] =
        level[i] > effective ? FrameLabel::kSpeech : FrameLabel::kSilence;
  }

  // Hangover: keep up to hangover_frames frames after each detected speech
  // frame. Relabeled frames do not refresh the budget.
  int budget = 0;
  for (int64_t i = 0; i < n; ++i) {
    if (level[i] > effective) {
      budget = cfg.hangover_frames;
    } else if (budget > 0) {
      out.labels[i] = FrameLabel::kSpeech;
      --budget;
    }
  }
  return out;
}

std::vector<Segment> SegmentsFromLabels(const VadLabels &labels) {
  std::vector<Segment> segments;
  const int64_t n = labels.num_frames();
  int64_t start = 0;
  for (int64_t i = 1; i <= n; ++i) {
    if (i == n || labels.labels[i] != labels.labels[start]) {
      segments.push_back({labels.labels[start], start, i});
      start = i;
    }
  }
  return segments;
}

}  // namespace silencelab
