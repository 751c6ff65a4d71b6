// src/transforms.cc

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

#include "silencelab/transforms.h"

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>

#include "silencelab/error.h"
#include "silencelab/rng.h"

namespace silencelab {

namespace {

int ValidatedFrameSamples(const AudioClip &clip, const VadLabels &labels) {
  const int frame = FrameSamples(clip.sample_rate, labels.frame_ms);
  if (labels.num_frames() != clip.num_samples() / frame) {
    throw ValueError("labels cover " + std::to_string(labels.num_frames()) +
                     " frames but the clip has " +
                     std::to_string(clip.num_samples() / frame));
  }
  return frame;
}

AudioClip MaskFrames(const AudioClip &clip, const VadLabels &labels,
                     FrameLabel zeroed, bool zero_partial) {
  const int frame = ValidatedFrameSamples(clip, labels);
  AudioClip out = clip;
  const int64_t n = labels.num_frames();
  for (int64_t i = 0; i < n; ++i) {
    if (labels.labels[i] != zeroed) continue;
    std::fill(out.samples.begin() + i * frame,
              out.samples.begin() + (i + 1) * frame, 0.0);
  }
  if (zero_partial) {
    std::fill(out.samples.begin() + n * frame, out.samples.end(), 0.0);
  }
  return out;
}

}  // namespace

AudioClip RemoveSilence(const AudioClip &clip, const VadLabels &labels) {
  const int frame = ValidatedFrameSamples(clip, labels);
  AudioClip out;
  out.sample_rate = clip.sample_rate;
  out.source_id = clip.source_id;
  out.source_depth = clip.source_depth;
  for (int64_t i = 0; i < labels.num_frames(); ++i) {
    if (labels.labels[i] != FrameLabel::kSpeech) continue;
    out.samples.insert(out.samples.end(), clip.samples.begin() + i * frame,
                       clip.samples.begin() + (i + 1) * frame);
  }
  return out;
}

AudioClip MaskSilence(const AudioClip &clip, const VadLabels &labels) {
  return MaskFrames(clip, labels, FrameLabel::kSilence,
                    /*zero_partial=*/false);
}

AudioClip MaskSpeech(const AudioClip &clip, const VadLabels &labels) {
  return MaskFrames(clip, labels, FrameLabel::kSpeech, /*zero_partial=*/true);
}

ButterworthLowPass::ButterworthLowPass(double cutoff_hz, int sample_rate)
    : cutoff_hz_(cutoff_hz), sample_rate_(sample_rate) {
  if (sample_rate <= 0) throw ConfigError("non-positive sample rate");
  const double nyquist = sample_rate / 2.0;
  if (!(cutoff_hz > 0.0) || !(cutoff_hz < nyquist)) {
    throw ConfigError("cutoff must lie in (0, " + std::to_string(nyquist) +
                      ") Hz, got " + std::to_string(cutoff_hz));
  }

  const double fs = sample_rate;
  // Prewarp so the analog cutoff lands on cutoff_hz after the bilinear map.
  const double warped = 2.0 * fs * std::tan(M_PI * cutoff_hz / fs);

  for (int k = 0; k < kNumSections; ++k) {
    // Upper-half-plane prototype pole of the order-8 Butterworth circle.
    const double angle =
        M_PI * static_cast<double>(2 * k + kOrder + 1) / (2.0 * kOrder);
    const std::complex<double> pole =
        warped * std::complex<double>(std::cos(angle), std::sin(angle));

    // Bilinear transform; the conjugate pole pair yields real a1, a2.
    const std::complex<double> zpole =
        (1.0 + pole / (2.0 * fs)) / (1.0 - pole / (2.0 * fs));
    BiquadSection s;
    s.a1 = -2.0 * zpole.real();
    s.a2 = std::norm(zpole);
    // Both zeros at z = -1; per-section gain normalizes DC to 1.
    const double gain = (1.0 + s.a1 + s.a2) / 4.0;
    s.b0 = gain;
    s.b1 = 2.0 * gain;
    s.b2 = gain;

    if (!(s.a2 < 1.0) || !(std::abs(s.a1) < 1.0 + s.a2)) {
      throw ConfigError("unstable section at cutoff " +
                        std::to_string(cutoff_hz) + " Hz");
    }
    sections_[k] = s;
  }
}

AudioClip ButterworthLowPass::Filter(const AudioClip &clip) const {
  if (clip.sample_rate != sample_rate_) {
    throw ValueError("filter designed for " + std::to_string(sample_rate_) +
                     " Hz, clip is " + std::to_string(clip.sample_rate) +
                     " Hz");
  }
  AudioClip out = clip;
  for (const BiquadSection &s : sections_) {
    // Transposed direct form II, state zeroed per section.
    double z1 = 0.0, z2 = 0.0;
    for (double &x : out.samples) {
      const double y = s.b0 * x + z1;
      z1 = s.b1 * x - s.a1 * y + z2;
      z2 = s.b2 * x - s.a2 * y;
      x = y;
    }
  }
  return out;
}

AudioClip FixLengthReflect(const AudioClip &clip, int64_t target_samples) {
  if (clip.samples.empty()) {
    throw ValueError("cannot reflect an empty clip");
  }
  if (target_samples <= 0) throw ValueError("target length must be positive");

  AudioClip out = clip;
  const int64_t n = clip.num_samples();
  if (n >= target_samples) {
    out.samples.resize(target_samples);
    return out;
  }
  out.samples.resize(target_samples);
  if (n == 1) {  // degenerate: nothing to mirror, hold the sample
    std::fill(out.samples.begin() + 1, out.samples.end(), clip.samples[0]);
    return out;
  }
  // Mirror indexing with period 2(n-1); edge samples are not doubled.
  const int64_t period = 2 * (n - 1);
  for (int64_t i = n; i < target_samples; ++i) {
    const int64_t m = i % period;
    out.samples[i] = clip.samples[m < n ? m : period - m];
  }
  return out;
}

AudioClip FixLengthRepeat(const AudioClip &clip, int64_t target_samples,
                          uint64_t rng_seed) {
  if (clip.samples.empty()) throw ValueError("cannot tile an empty clip");
  if (target_samples <= 0) throw ValueError("target length must be positive");

  AudioClip out = clip;
  const int64_t n = clip.num_samples();
  if (n == target_samples) return out;

  out.samples.resize(target_samples);
  if (n < target_samples) {
    for (int64_t i = n; i < target_samples; ++i) {
      out.samples[i] = clip.samples[i % n];
    }
    return out;
  }
  Rng rng(rng_seed);
  const int64_t offset = static_cast<int64_t>(
      rng.UniformBelow(static_cast<uint64_t>(n - target_samples + 1)));
  std::copy(clip.samples.begin() + offset,
            clip.samples.begin() + offset + target_samples,
            out.samples.begin());
  return out;
}

AudioClip ResampleLinear(const AudioClip &clip, int target_rate) {
  if (target_rate <= 0) throw ConfigError("non-positive target rate");
  if (clip.sample_rate == target_rate) return clip;

  AudioClip out;
  out.sample_rate = target_rate;
  out.source_id = clip.source_id;
  out.source_depth = clip.source_depth;
  const int64_t n = clip.num_samples();
  if (n == 0) return out;

  const int64_t m = static_cast<int64_t>(std::llround(
      static_cast<double>(n) * target_rate / clip.sample_rate));
  out.samples.resize(m);
  const double step =
      static_cast<double>(clip.sample_rate) / static_cast<double>(target_rate);
  for (int64_t i = 0; i < m; ++i) {
    const double pos = static_cast<double>(i) * step;
    const int64_t lo = std::min(static_cast<int64_t>(pos), n - 1);
    const int64_t hi = std::min(lo + 1, n - 1);
    const double frac = pos - static_cast<double>(lo);
    out.samples[i] = clip.samples[lo] + frac * (clip.samples[hi] - clip.samples[lo]);
  }
  return out;
}

}  // namespace silencelab
