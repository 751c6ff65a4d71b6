// include/silencelab/scoring.h

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

#ifndef SILENCELAB_SCORING_H_
#define SILENCELAB_SCORING_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "silencelab/audio_io.h"
#include "silencelab/vad.h"

namespace silencelab {

// Score polarity everywhere: higher means more bonafide-like. External
// score files with the opposite polarity can be negated on load by the CLI.

// utt_id -> score. std::map keeps serialization order deterministic.
using ScoreSet = std::map<std::string, double>;

struct EerOperatingPoint {
  double eer = 0.0;
  double threshold = 0.0;
};

// Equal error rate of two score samples. FRR(t) is the fraction of
// bonafide scores strictly below t, FAR(t) the fraction of spoof scores at
// or above t. Thresholds sweep the sorted unique scores; the crossing of
// the two rates is linearly interpolated between the bracketing operating
// points. Both sides must be non-empty (ValueError).
EerOperatingPoint ComputeEerFromSamples(std::vector<double> bonafide,
                                        std::vector<double> spoof);

struct AttackEer {
  double eer = 0.0;
  double threshold = 0.0;
  int64_t n_spoof = 0;
};

struct EerReport {
  double eer = 0.0;
  double threshold = 0.0;
  int64_t n_bonafide = 0;
  int64_t n_spoof = 0;
  // Attack id -> EER over all bonafide trials plus that attack's spoofs.
  std::map<std::string, AttackEer> per_attack;
};

// Joins scores with the manifest. Every record must have a score
// (ValueError naming the first missing utt_id); both classes must be
// present. Scores without a manifest record are ignored.
EerReport ComputeEer(const ScoreSet &scores,
                     const std::vector<TrialRecord> &records);

// Mean of the two sets, optionally z-normalizing each one first (its own
// mean and population stddev; a zero-spread set maps to all zeros). The
// sets must cover identical utt_ids. Fusing a set with itself without
// normalization is the identity.
ScoreSet FuseScores(const ScoreSet &a, const ScoreSet &b, bool normalize);

// Per-utterance scorers over a manifest. Unreadable records end up in
// `errors` and get no score.
struct BatchScoreResult {
  ScoreSet scores;
  std::vector<std::string> errors;
};

// Silence proportion as the score. Bonafide speech carries more silence,
// so the polarity convention holds directly.
BatchScoreResult ScoreProportion(const std::vector<TrialRecord> &records,
                                 const std::filesystem::path &audio_dir,
                                 const VadConfig &cfg);

// Mean RMS level (dBFS) over the silence-labeled frames of one clip; the
// dBFS floor when no frame is silence.
double MeanSilenceFrameDbfs(const AudioClip &clip, const VadLabels &labels);

// Mean RMS level (dBFS) over silence-labeled frames; clips with no silence
// frames score the dBFS floor. Separates natural low-level silence noise
// from synthetic digital-zero or filtered silence.
BatchScoreResult ScoreSilenceEnergy(const std::vector<TrialRecord> &records,
                                    const std::filesystem::path &audio_dir,
                                    const VadConfig &cfg);

// Text format: "UTT_ID SCORE" per line, scores at full round-trip
// precision. Duplicate ids and unparseable scores raise FormatError with
// the line number.
ScoreSet LoadScores(const std::filesystem::path &path);
void SaveScores(const ScoreSet &scores, const std::filesystem::path &path);

// JSON keeps full precision; the CSV mirror rounds to percent with two
// decimals.
void WriteEerReportJson(const EerReport &report,
                        const std::filesystem::path &path);
void WriteEerReportCsv(const EerReport &report,
                       const std::filesystem::path &path);

}  // namespace silencelab

#endif  // SILENCELAB_SCORING_H_
