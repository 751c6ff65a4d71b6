// include/silencelab/attacks.h

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

#ifndef SILENCELAB_ATTACKS_H_
#define SILENCELAB_ATTACKS_H_

#include <cstdint>
#include <string>

#include "silencelab/audio_io.h"
#include "silencelab/silence_analysis.h"
#include "silencelab/vad.h"

namespace silencelab {

// Edits that wrap extra head/tail material around a clip. The clip itself
// is never touched: output[head_len .. head_len + n) is bit-identical to
// the input. Both attacks are deterministic given their seed; harness code
// derives one seed per utterance (see DeriveSeed) so results do not depend
// on processing order.

enum class AttackKind { kBonafideSilence, kSpoofSilence, kWhiteNoise };

// Accepts the short kind tokens "bona", "spoof", "white" and the
// descriptive aliases "bonafide-silence", "spoof-silence", "white-noise".
// ConfigError otherwise.
AttackKind AttackKindFromString(const std::string &s);

// Short token for a kind, stable across config and provenance files.
const char *AttackKindName(AttackKind kind);

struct SilenceAttackInfo {
  size_t head_entry = 0;  // index into pool.entries
  size_t tail_entry = 0;
  int64_t head_samples = 0;
  int64_t tail_samples = 0;
};

// Splices one pool entry before and one after the clip, drawn independently
// and uniformly. Entries harvested from head position are preferred for the
// front draw and tail entries for the back draw; when the pool has none of
// the preferred kind, any entry qualifies. Draw order is head then tail.
// Empty pool or sample-rate mismatch -> ValueError.
AudioClip ConcatSilenceAttack(const AudioClip &clip, const SilencePool &pool,
                              uint64_t rng_seed,
                              SilenceAttackInfo *info = nullptr);

struct WhiteNoiseInfo {
  int64_t head_samples = 0;
  int64_t tail_samples = 0;
  double speech_rms = 0.0;
  double noise_rms_target = 0.0;
  double measured_snr_db = 0.0;  // from the generated samples
};

// Pads both ends with white noise at a target SNR relative to the clip's
// speech level. The reference RMS is taken over speech-labeled frames (the
// whole clip when nothing is labeled speech); the noise RMS is then
// speech_rms / 10^(snr_db / 20). Each pad's duration is drawn uniformly
// from (0, 0.4 * T) seconds, T being the clip duration, head drawn before
// tail, then head noise samples before tail noise samples; both pads have
// at least one sample. Samples are i.i.d. uniform on [-a, a] with
// a = rms * sqrt(3). Empty clip -> ValueError.
AudioClip WhiteNoiseAttack(const AudioClip &clip, const VadLabels &labels,
                           double snr_db, uint64_t rng_seed,
                           WhiteNoiseInfo *info = nullptr);

}  // namespace silencelab

#endif  // SILENCELAB_ATTACKS_H_
