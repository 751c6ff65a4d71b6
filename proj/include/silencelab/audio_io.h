// include/silencelab/audio_io.h

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

#ifndef SILENCELAB_AUDIO_IO_H_
#define SILENCELAB_AUDIO_IO_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace silencelab {

// Everything downstream of I/O assumes this rate; feature ops enforce it.
constexpr int kCanonicalSampleRate = 16000;

enum class WavBitDepth { kInt16, kFloat32 };

// Mono waveform. Samples are finite and within [-1, 1] after decode.
struct AudioClip {
  std::vector<double> samples;
  int sample_rate = kCanonicalSampleRate;
  std::string source_id;  // stem of the source file, empty if synthesized
  WavBitDepth source_depth = WavBitDepth::kInt16;

  int64_t num_samples() const { return static_cast<int64_t>(samples.size()); }
  double duration_s() const {
    return sample_rate > 0
               ? static_cast<double>(samples.size()) / sample_rate
               : 0.0;
  }
};

// Reads a mono RIFF/WAVE file holding PCM16 or IEEE float32 data.
// int16 samples are scaled by 1/32768. Anything else is refused:
// unknown codec or >16/32 bit -> UnsupportedError, multi-channel ->
// UnsupportedError, truncated or malformed structure -> FormatError,
// unreadable file -> IoError. Non-finite float data is a FormatError;
// out-of-range float data is clamped to [-1, 1].
AudioClip ReadWav(const std::filesystem::path &path);

struct WavWriteStats {
  int64_t clipped = 0;  // samples clamped to full scale during encode
};

// Writes a canonical 44-byte header followed by raw little-endian data.
// int16 encoding rounds half away from zero and clips at full scale, so a
// clip read from a 16-bit file and written back as int16 reproduces the
// data chunk byte for byte.
WavWriteStats WriteWav(const AudioClip &clip, const std::filesystem::path &path,
                       WavBitDepth depth);

enum class TrialKey { kBonafide, kSpoof };

// One line of an ASVspoof-style trial list:
//
//   SPEAKER_ID UTT_ID - ATTACK_ID KEY
//
// The third field is unused in the LA protocols and ignored here. KEY is
// "bonafide" (with ATTACK_ID "-") or "spoof" (with a real ATTACK_ID).
struct TrialRecord {
  std::string speaker_id;
  std::string utt_id;
  std::string attack_id;  // "-" for bonafide trials
  TrialKey key = TrialKey::kBonafide;
};

// Whitespace-separated, one record per line, blank lines skipped. A line
// with the wrong field count, an unknown key, or a key inconsistent with
// the attack id raises FormatError naming the line number.
std::vector<TrialRecord> ParseManifest(const std::filesystem::path &path);

void WriteManifest(const std::vector<TrialRecord> &records,
                   const std::filesystem::path &path);

// audio_dir/<utt_id>.wav
std::filesystem::path AudioPathFor(const std::filesystem::path &audio_dir,
                                   const std::string &utt_id);

}  // namespace silencelab

#endif  // SILENCELAB_AUDIO_IO_H_
