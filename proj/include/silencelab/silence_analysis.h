// include/silencelab/silence_analysis.h

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

#ifndef SILENCELAB_SILENCE_ANALYSIS_H_
#define SILENCELAB_SILENCE_ANALYSIS_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "silencelab/audio_io.h"
#include "silencelab/vad.h"

namespace silencelab {

// Fraction of labeled frames that are silence; 0 when nothing is labeled.
double ProportionOfSilence(const VadLabels &labels);

struct SilenceProfile {
  std::string utt_id;
  int64_t n_total_frames = 0;
  int64_t n_silence_frames = 0;
  double proportion = 0.0;
  int64_t n_silence_segments = 0;
  int64_t head_frames = 0;  // leading silence run length
  int64_t tail_frames = 0;  // trailing silence run length
};

SilenceProfile MakeSilenceProfile(const std::string &utt_id,
                                  const VadLabels &labels);

// Leading and trailing silence, as raw samples.
//
// head covers the leading silence run, tail the trailing one. A trailing
// partial (unlabeled) frame belongs to the silence region that reaches the
// end of the clip: it is appended to tail, or to head when the whole clip
// is one silence run (then head is the entire clip and tail stays empty).
// A clip ending in speech gets an empty tail and the partial frame is
// dropped.
struct EdgeSilence {
  std::vector<double> head;
  std::vector<double> tail;
};

// ValueError when labels do not match the clip's framing.
EdgeSilence ExtractEdgeSilence(const AudioClip &clip, const VadLabels &labels);

enum class PoolPosition { kHead, kTail };

struct SilencePoolEntry {
  std::string source_utt;
  PoolPosition position = PoolPosition::kHead;
  std::vector<double> samples;  // verbatim slice of the source clip
};

struct SilencePool {
  TrialKey source_key = TrialKey::kBonafide;
  int sample_rate = kCanonicalSampleRate;
  std::vector<SilencePoolEntry> entries;
};

struct PoolBuildResult {
  SilencePool pool;
  std::vector<std::string> errors;  // one message per failed record
};

// Harvests edge silence from every record matching key_filter, head entry
// before tail entry, in manifest order. Records whose audio cannot be read
// are reported in `errors` and skipped; a sample-rate mismatch between
// sources is an error too. Empty edges contribute no entry.
PoolBuildResult BuildSilencePool(const std::vector<TrialRecord> &records,
                                 const std::filesystem::path &audio_dir,
                                 TrialKey key_filter, const VadConfig &cfg);

// Single-file pool container: magic, JSON index, float64 LE sample data.
void SavePool(const SilencePool &pool, const std::filesystem::path &path);
SilencePool LoadPool(const std::filesystem::path &path);

struct GroupStats {
  int64_t count = 0;
  double mean = 0.0;
  double median = 0.0;
  double q1 = 0.0;
  double q3 = 0.0;
};

struct HistogramTable {
  int n_bins = 0;
  // group -> per-bin counts over uniform bins on [0, 1]; proportion 1.0
  // lands in the last bin.
  std::map<std::string, std::vector<int64_t>> counts;
  std::map<std::string, GroupStats> stats;
};

// group_of maps utt_id to a group name; profiles without a mapping are
// skipped. n_bins must be positive.
HistogramTable ProportionHistogram(
    const std::vector<SilenceProfile> &profiles,
    const std::map<std::string, std::string> &group_of, int n_bins);

}  // namespace silencelab

#endif  // SILENCELAB_SILENCE_ANALYSIS_H_
