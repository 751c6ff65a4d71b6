// tests/test_audio_io.cc

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

#include <cmath>
#include <cstdint>
#include <fstream>
#include <vector>

#include "doctest.h"
#include "silencelab/audio_io.h"
#include "silencelab/error.h"
#include "tests/testutil.h"

namespace silencelab {
namespace {

using testing::BuildPcm16Wav;
using testing::FilesIdentical;
using testing::MakeClip;
using testing::MakeTone;
using testing::ReadFileBytes;
using testing::TempDir;
using testing::WriteFileBytes;

TEST_CASE("pcm16 samples scale by 1/32768") {
  TempDir tmp;
  const auto path = tmp / "scale.wav";
  WriteFileBytes(path, BuildPcm16Wav({0, 16384, -32768}));
  const AudioClip clip = ReadWav(path);
  REQUIRE(clip.num_samples() == 3);
  CHECK(clip.samples[0] == 0.0);
  CHECK(clip.samples[1] == 0.5);
  CHECK(clip.samples[2] == -1.0);
  CHECK(clip.sample_rate == 16000);
  CHECK(clip.source_depth == WavBitDepth::kInt16);
}

TEST_CASE("pcm16 write/read round trip is sample identical") {
  TempDir tmp;
  const auto a_path = tmp / "a.wav";
  const auto b_path = tmp / "b.wav";
  std::vector<int16_t> raw;
  for (int i = -100; i <= 100; ++i) raw.push_back(static_cast<int16_t>(163 * i));
  WriteFileBytes(a_path, BuildPcm16Wav(raw));

  const AudioClip a = ReadWav(a_path);
  WriteWav(a, b_path, WavBitDepth::kInt16);
  const AudioClip b = ReadWav(b_path);
  REQUIRE(a.num_samples() == b.num_samples());
  for (int64_t i = 0; i < a.num_samples(); ++i) {
    CHECK(a.samples[i] == b.samples[i]);
  }
  // The canonical writer reproduces the hand-built file byte for byte.
  CHECK(FilesIdentical(a_path, b_path));
}

TEST_CASE("full-scale sine round trip stays within one quantization step") {
  TempDir tmp;
  const auto path = tmp / "sine.wav";
  const AudioClip tone = MakeTone(440.0, 1.0, 16000);
  WriteWav(tone, path, WavBitDepth::kInt16);
  const AudioClip back = ReadWav(path);
  REQUIRE(back.num_samples() == tone.num_samples());
  double max_err = 0.0;
  for (int64_t i = 0; i < tone.num_samples(); ++i) {
    max_err = std::max(max_err, std::abs(back.samples[i] - tone.samples[i]));
  }
  // The peak +1.0 sample clips to 32767, an error of exactly 2^-15; all
  // rounding errors are at most half that.
  CHECK(max_err <= std::pow(2.0, -15.0));
}

TEST_CASE("int16 file layout: 44-byte canonical header plus data") {
  TempDir tmp;
  const auto path = tmp / "layout.wav";
  AudioClip clip = MakeTone(440.0, 0.25, 16000);
  WriteWav(clip, path, WavBitDepth::kInt16);
  CHECK(std::filesystem::file_size(path) == 44 + 32000);
}

TEST_CASE("out-of-range samples clip and are counted") {
  TempDir tmp;
  const auto path = tmp / "clip.wav";
  const AudioClip clip = MakeClip({1.5, -2.0, 0.25});
  const WavWriteStats stats = WriteWav(clip, path, WavBitDepth::kInt16);
  CHECK(stats.clipped == 2);
  const AudioClip back = ReadWav(path);
  CHECK(back.samples[0] == doctest::Approx(32767.0 / 32768.0));
  CHECK(back.samples[1] == -1.0);
  CHECK(back.samples[2] == 0.25);
}

TEST_CASE("float32 round trip") {
  TempDir tmp;
  const auto path = tmp / "f32.wav";
  const AudioClip clip = MakeClip({0.0, 0.125, -0.75, 1.0});
  const WavWriteStats stats = WriteWav(clip, path, WavBitDepth::kFloat32);
  CHECK(stats.clipped == 0);
  const AudioClip back = ReadWav(path);
  REQUIRE(back.num_samples() == 4);
  CHECK(back.source_depth == WavBitDepth::kFloat32);
  for (int64_t i = 0; i < 4; ++i) {
    CHECK(back.samples[i] == doctest::Approx(clip.samples[i]).epsilon(1e-7));
  }
}

TEST_CASE("reader error taxonomy") {
  TempDir tmp;

  SUBCASE("missing file") {
    CHECK_THROWS_AS(ReadWav(tmp / "nope.wav"), IoError);
  }
  SUBCASE("bad magic") {
    const auto path = tmp / "bad.wav";
    WriteFileBytes(path, {'J', 'U', 'N', 'K', 0, 0, 0, 0});
    CHECK_THROWS_AS(ReadWav(path), FormatError);
  }
  SUBCASE("stereo rejected") {
    const auto path = tmp / "stereo.wav";
    WriteFileBytes(path, BuildPcm16Wav({0, 0, 0, 0}, 16000, 2));
    CHECK_THROWS_AS(ReadWav(path), UnsupportedError);
  }
  SUBCASE("unknown codec rejected") {
    const auto path = tmp / "alaw.wav";
    WriteFileBytes(path, BuildPcm16Wav({0, 0}, 16000, 1, 6));
    CHECK_THROWS_AS(ReadWav(path), UnsupportedError);
  }
  SUBCASE("truncated data chunk") {
    const auto path = tmp / "trunc.wav";
    std::vector<char> bytes = BuildPcm16Wav({1, 2, 3, 4});
    bytes.resize(bytes.size() - 3);
    WriteFileBytes(path, bytes);
    CHECK_THROWS_AS(ReadWav(path), FormatError);
  }
}

TEST_CASE("reader skips unknown chunks") {
  TempDir tmp;
  const auto path = tmp / "extra.wav";
  // RIFF with a LIST chunk between fmt and data.
  std::vector<char> f = BuildPcm16Wav({100, -100});
  std::vector<char> extra = {'L', 'I', 'S', 'T', 5, 0, 0, 0,
                             'x', 'y', 'z', 'w', 'v', 0};  // odd size padded
  f.insert(f.begin() + 36, extra.begin(), extra.end());
  const uint32_t riff_size = 36 + 4 + static_cast<uint32_t>(extra.size());
  for (int i = 0; i < 4; ++i) f[4 + i] = static_cast<char>(riff_size >> (8 * i));
  WriteFileBytes(path, f);
  const AudioClip clip = ReadWav(path);
  REQUIRE(clip.num_samples() == 2);
  CHECK(clip.samples[0] == doctest::Approx(100.0 / 32768.0));
}

TEST_CASE("manifest parses ASVspoof protocol lines") {
  TempDir tmp;
  const auto path = tmp / "manifest.txt";
  std::ofstream(path) << "LA_0079 LA_T_1138215 - - bonafide\n"
                      << "LA_0079 LA_T_1271820 - A01 spoof\r\n"
                      << "\n";
  const std::vector<TrialRecord> records = ParseManifest(path);
  REQUIRE(records.size() == 2);
  CHECK(records[0].speaker_id == "LA_0079");
  CHECK(records[0].utt_id == "LA_T_1138215");
  CHECK(records[0].attack_id == "-");
  CHECK(records[0].key == TrialKey::kBonafide);
  CHECK(records[1].attack_id == "A01");
  CHECK(records[1].key == TrialKey::kSpoof);
}

TEST_CASE("empty manifest parses to empty sequence") {
  TempDir tmp;
  const auto path = tmp / "empty.txt";
  std::ofstream(path) << "";
  CHECK(ParseManifest(path).empty());
}

TEST_CASE("manifest errors carry line numbers") {
  TempDir tmp;
  const auto path = tmp / "bad.txt";

  SUBCASE("wrong field count") {
    std::ofstream(path) << "LA_0079 LA_T_1 - - bonafide\n"
                        << "LA_0079 LA_T_2 - spoof\n";
    try {
      ParseManifest(path);
      FAIL("expected FormatError");
    } catch (const FormatError &e) {
      CHECK(std::string(e.what()).find(":2:") != std::string::npos);
    }
  }
  SUBCASE("unknown key") {
    std::ofstream(path) << "LA_0079 LA_T_1 - - genuine\n";
    CHECK_THROWS_AS(ParseManifest(path), FormatError);
  }
  SUBCASE("bonafide with attack id") {
    std::ofstream(path) << "LA_0079 LA_T_1 - A01 bonafide\n";
    CHECK_THROWS_AS(ParseManifest(path), FormatError);
  }
  SUBCASE("spoof without attack id") {
    std::ofstream(path) << "LA_0079 LA_T_1 - - spoof\n";
    CHECK_THROWS_AS(ParseManifest(path), FormatError);
  }
}

TEST_CASE("manifest round trip") {
  TempDir tmp;
  const auto path = tmp / "m.txt";
  std::vector<TrialRecord> records = {
      {"SPK1", "UTT_A", "-", TrialKey::kBonafide},
      {"SPK2", "UTT_B", "A07", TrialKey::kSpoof},
  };
  WriteManifest(records, path);
  const std::vector<TrialRecord> back = ParseManifest(path);
  REQUIRE(back.size() == 2);
  CHECK(back[0].utt_id == "UTT_A");
  CHECK(back[1].attack_id == "A07");
  CHECK(back[1].key == TrialKey::kSpoof);
}

TEST_CASE("nan samples are rejected on read") {
  TempDir tmp;
  const auto path = tmp / "nan.wav";
  AudioClip clip = MakeClip({0.0, 0.5});
  WriteWav(clip, path, WavBitDepth::kFloat32);
  // Poke a NaN into the float32 payload (data starts at byte 44).
  std::vector<char> bytes = ReadFileBytes(path);
  const uint32_t nan_bits = 0x7fc00000u;
  std::memcpy(bytes.data() + 44, &nan_bits, 4);
  WriteFileBytes(path, bytes);
  CHECK_THROWS_AS(ReadWav(path), FormatError);
}

}  // namespace
}  // namespace silencelab
