// include/silencelab/transforms.h

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

#ifndef SILENCELAB_TRANSFORMS_H_
#define SILENCELAB_TRANSFORMS_H_

#include <array>
#include <cstdint>

#include "silencelab/audio_io.h"
#include "silencelab/vad.h"

namespace silencelab {

// Waveform edits keyed off VAD labels. All three take labels produced for
// exactly this clip (ValueError otherwise). Masking works on the waveform,
// never on features, so masked and unmasked clips stay time-aligned.

// Concatenation of the speech-labeled frames; the trailing partial frame is
// dropped. May be empty when nothing is labeled speech.
AudioClip RemoveSilence(const AudioClip &clip, const VadLabels &labels);

// Zeroes silence-labeled frames; speech frames and the trailing partial
// frame pass through. Length preserved.
AudioClip MaskSilence(const AudioClip &clip, const VadLabels &labels);

// Mirror of MaskSilence: zeroes speech frames and the trailing partial
// frame, keeps silence. MaskSilence(x) + MaskSpeech(x) == x sample-wise.
AudioClip MaskSpeech(const AudioClip &clip, const VadLabels &labels);

struct BiquadSection {
  double b0 = 0, b1 = 0, b2 = 0;  // numerator
  double a1 = 0, a2 = 0;          // denominator, a0 normalized to 1
};

// 8th-order Butterworth low-pass as a cascade of 4 second-order sections.
// Analog prototype poles are prewarped and mapped with the bilinear
// transform; each section is normalized to unity DC gain, so the cascade
// has DC gain exactly 1 up to rounding. Construction fails (ConfigError)
// unless 0 < cutoff < rate/2 and every pole lands strictly inside the unit
// circle.
class ButterworthLowPass {
 public:
  static constexpr int kOrder = 8;
  static constexpr int kNumSections = kOrder / 2;

  ButterworthLowPass(double cutoff_hz, int sample_rate);

  // Causal single forward pass, zero initial state, length preserved.
  // ValueError when the clip's rate differs from the design rate.
  AudioClip Filter(const AudioClip &clip) const;

  const std::array<BiquadSection, kNumSections> &sections() const {
    return sections_;
  }
  double cutoff_hz() const { return cutoff_hz_; }
  int sample_rate() const { return sample_rate_; }

 private:
  double cutoff_hz_;
  int sample_rate_;
  std::array<BiquadSection, kNumSections> sections_;
};

// Cuts or grows the clip to exactly target_samples. Long clips keep their
// first target_samples. Short clips are extended by reflection about the
// final sample (the edge sample is not repeated), ping-ponging as needed:
// [a b c] -> 5 gives [a b c b a], [a b] -> 6 gives [a b a b a b].
// Empty clip -> ValueError; target must be positive.
AudioClip FixLengthReflect(const AudioClip &clip, int64_t target_samples);

// Cuts or grows the clip to exactly target_samples. Short clips are tiled
// cyclically from the start. Long clips keep a contiguous slice whose
// start offset is drawn uniformly from [0, n - target] with the given
// seed. Equal length is the identity.
AudioClip FixLengthRepeat(const AudioClip &clip, int64_t target_samples,
                          uint64_t rng_seed);

// Linear-interpolation resampler. Output length is round(n * target / src).
AudioClip ResampleLinear(const AudioClip &clip, int target_rate);

}  // namespace silencelab

#endif  // SILENCELAB_TRANSFORMS_H_
