// src/attacks.cc

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

#include "silencelab/attacks.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "silencelab/error.h"
#include "silencelab/rng.h"

namespace silencelab {

namespace {

size_t DrawEntry(const SilencePool &pool, PoolPosition preferred, Rng *rng) {
  std::vector<size_t> candidates;
  for (size_t i = 0; i < pool.entries.size(); ++i) {
    if (pool.entries[i].position == preferred) candidates.push_back(i);
  }
  if (candidates.empty()) {
    return static_cast<size_t>(rng->UniformBelow(pool.entries.size()));
  }
  return candidates[rng->UniformBelow(candidates.size())];
}

}  // namespace

AttackKind AttackKindFromString(const std::string &s) {
  if (s == "bona" || s == "bonafide-silence") {
    return AttackKind::kBonafideSilence;
  }
  if (s == "spoof" || s == "spoof-silence") return AttackKind::kSpoofSilence;
  if (s == "white" || s == "white-noise") return AttackKind::kWhiteNoise;
  throw ConfigError("unknown attack kind '" + s + "'");
}

const char *AttackKindName(AttackKind kind) {
  switch (kind) {
    case AttackKind::kBonafideSilence:
      return "bona";
    case AttackKind::kSpoofSilence:
      return "spoof";
    case AttackKind::kWhiteNoise:
      return "white";
  }
  return "white";
}

AudioClip ConcatSilenceAttack(const AudioClip &clip, const SilencePool &pool,
                              uint64_t rng_seed, SilenceAttackInfo *info) {
  if (pool.entries.empty()) throw ValueError("silence pool is empty");
  if (clip.sample_rate != pool.sample_rate) {
    throw ValueError("pool built at " + std::to_string(pool.sample_rate) +
                     " Hz, clip is " + std::to_string(clip.sample_rate) +
                     " Hz");
  }

  Rng rng(rng_seed);
  const size_t head_idx = DrawEntry(pool, PoolPosition::kHead, &rng);
  const size_t tail_idx = DrawEntry(pool, PoolPosition::kTail, &rng);
  const std::vector<double> &head = pool.entries[head_idx].samples;
  const std::vector<double> &tail = pool.entries[tail_idx].samples;

  AudioClip out;
  out.sample_rate = clip.sample_rate;
  out.source_id = clip.source_id;
  out.source_depth = clip.source_depth;
  out.samples.reserve(head.size() + clip.samples.size() + tail.size());
  out.samples.insert(out.samples.end(), head.begin(), head.end());
  out.samples.insert(out.samples.end(), clip.samples.begin(),
                     clip.samples.end());
  out.samples.insert(out.samples.end(), tail.begin(), tail.end());

  if (info != nullptr) {
    info->head_entry = head_idx;
    info->tail_entry = tail_idx;
    info->head_samples = static_cast<int64_t>(head.size());
    info->tail_samples = static_cast<int64_t>(tail.size());
  }
  return out;
}

AudioClip WhiteNoiseAttack(const AudioClip &clip, const VadLabels &labels,
                           double snr_db, uint64_t rng_seed,
                           WhiteNoiseInfo *info) {
  if (clip.samples.empty()) throw ValueError("cannot attack an empty clip");

  // Reference level: RMS over speech-labeled samples, whole clip fallback.
  const int frame = FrameSamples(clip.sample_rate, labels.frame_ms);
  if (labels.num_frames() != clip.num_samples() / frame) {
    throw ValueError("labels do not match the clip's framing");
  }
  double acc = 0.0;
  int64_t count = 0;
  for (int64_t i = 0; i < labels.num_frames(); ++i) {
    if (labels.labels[i] != FrameLabel::kSpeech) continue;
    for (int64_t j = i * frame; j < (i + 1) * frame; ++j) {
      acc += clip.samples[j] * clip.samples[j];
      ++count;
    }
  }
  if (count == 0) {
    for (double s : clip.samples) acc += s * s;
    count = clip.num_samples();
  }
  const double speech_rms = std::sqrt(acc / static_cast<double>(count));
  const double noise_rms = speech_rms / std::pow(10.0, snr_db / 20.0);
  const double amp = noise_rms * std::sqrt(3.0);  // uniform [-a, a]

  Rng rng(rng_seed);
  const double t_max = 0.4 * clip.duration_s();
  auto draw_len = [&]() {
    double u;
    do {
      u = rng.Uniform01();
    } while (u == 0.0);  // open interval (0, t_max)
    return std::max<int64_t>(
        1, std::llround(u * t_max * clip.sample_rate));
  };
  const int64_t head_len = draw_len();
  const int64_t tail_len = draw_len();

  std::vector<double> noise(head_len + tail_len);
  for (double &s : noise) s = amp * (2.0 * rng.Uniform01() - 1.0);

  AudioClip out;
  out.sample_rate = clip.sample_rate;
  out.source_id = clip.source_id;
  out.source_depth = clip.source_depth;
  out.samples.reserve(noise.size() + clip.samples.size());
  out.samples.insert(out.samples.end(), noise.begin(),
                     noise.begin() + head_len);
  out.samples.insert(out.samples.end(), clip.samples.begin(),
                     clip.samples.end());
  out.samples.insert(out.samples.end(), noise.begin() + head_len,
                     noise.end());

  if (info != nullptr) {
    info->head_samples = head_len;
    info->tail_samples = tail_len;
    info->speech_rms = speech_rms;
    info->noise_rms_target = noise_rms;
    double nacc = 0.0;
    for (double s : noise) nacc += s * s;
    const double measured =
        std::sqrt(nacc / static_cast<double>(noise.size()));
    info->measured_snr_db = measured > 0.0 && speech_rms > 0.0
                                ? 20.0 * std::log10(speech_rms / measured)
                                : std::numeric_limits<double>::infinity();
  }
  return out;
}

}  // namespace silencelab
