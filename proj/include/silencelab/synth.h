// include/silencelab/synth.h

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

#ifndef SILENCELAB_SYNTH_H_
#define SILENCELAB_SYNTH_H_

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "silencelab/audio_io.h"

namespace silencelab {

// Synthetic desk corpus: harmonic tone complexes stand in for speech,
// separated by silence whose amount and content are controlled per class.
// Everything derives from (seed, utt_id), so regeneration is byte-identical
// and independent of ordering.

enum class SilenceKind {
  kNaturalNoise,  // low-level uniform noise, like room tone
  kDigitalZero,   // exact zeros, like typical VC output
  kFiltered       // low-passed noise, silence that went through a vocoder
};

struct ClassProfile {
  double proportion_mean = 0.4;
  double proportion_std = 0.05;
  SilenceKind silence_kind = SilenceKind::kNaturalNoise;
};

struct SyntheticCorpusSpec {
  int n_bonafide = 0;
  int n_per_attack = 0;
  ClassProfile bonafide;  // natural-noise silence by default
  std::map<std::string, ClassProfile> attack_profiles;  // "A01" -> profile
  double duration_min_s = 3.0;
  double duration_max_s = 6.0;
  uint64_t seed = 0;
  int sample_rate = kCanonicalSampleRate;
  int frame_ms = 10;  // layout granularity; silence is placed frame-exact

  // The detector's hangover pass relabels this many silence frames after
  // each speech run; the generator lays out that much extra silence so the
  // measured proportion tracks the drawn target.
  int hangover_compensation = 2;

  void Validate() const;
  static SyntheticCorpusSpec FromJsonFile(const std::filesystem::path &path);
};

// Trial list for the spec: bonafide records first, then each attack in id
// order, n_per_attack records each. Utt ids are SYN_0000000, SYN_0000001,
// ... in that order.
std::vector<TrialRecord> SyntheticRecords(const SyntheticCorpusSpec &spec);

// The clip for one record of the spec. Proportion is drawn from the
// class's Gaussian, clipped to [0.02, 0.95]; silence is split over a
// leading run, a trailing run, and up to two interior pauses.
AudioClip SynthClip(const SyntheticCorpusSpec &spec, const TrialRecord &rec);

// Runs fn over every (record, clip) pair without touching the filesystem.
void ForEachSyntheticClip(
    const SyntheticCorpusSpec &spec,
    const std::function<void(const TrialRecord &, const AudioClip &)> &fn);

// Writes out_dir/wav/<utt>.wav (PCM16) and out_dir/manifest.txt, returning
// the records.
std::vector<TrialRecord> GenerateSyntheticCorpus(
    const SyntheticCorpusSpec &spec, const std::filesystem::path &out_dir);

}  // namespace silencelab

#endif  // SILENCELAB_SYNTH_H_
