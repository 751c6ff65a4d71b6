// tests/test_attacks.cc

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

#include <array>
#include <cmath>
#include <cstring>
#include <vector>

#include "doctest.h"
#include "silencelab/attacks.h"
#include "silencelab/error.h"
#include "silencelab/vad.h"
#include "tests/testutil.h"

namespace silencelab {
namespace {

using testing::MakeNoise;
using testing::MakeTone;

SilencePool TwoEntryPool() {
  SilencePool pool;
  pool.sample_rate = 16000;
  pool.entries.push_back({"H1", PoolPosition::kHead,
                          std::vector<double>(100, 0.01)});
  pool.entries.push_back({"T1", PoolPosition::kTail,
                          std::vector<double>(50, -0.02)});
  return pool;
}

TEST_CASE("concat attack splices head and tail around an untouched middle") {
  const AudioClip clip = MakeTone(440.0, 0.5, 8000);
  const SilencePool pool = TwoEntryPool();

  SilenceAttackInfo info;
  const AudioClip out = ConcatSilenceAttack(clip, pool, 1234, &info);

  // One head entry and one tail entry force both draws.
  CHECK(info.head_entry == 0);
  CHECK(info.tail_entry == 1);
  CHECK(info.head_samples == 100);
  CHECK(info.tail_samples == 50);
  REQUIRE(out.num_samples() == 100 + 8000 + 50);

  for (int64_t i = 0; i < 100; ++i) CHECK(out.samples[i] == 0.01);
  for (int64_t i = 0; i < 8000; ++i) {
    CHECK(out.samples[100 + i] == clip.samples[i]);
  }
  for (int64_t i = 0; i < 50; ++i) {
    CHECK(out.samples[8100 + i] == -0.02);
  }
  CHECK(out.sample_rate == clip.sample_rate);
}

TEST_CASE("concat attack prefers entries matching their position") {
  const AudioClip clip = MakeTone(440.0, 0.5, 4000);
  SilencePool pool = TwoEntryPool();
  pool.entries.push_back({"H2", PoolPosition::kHead,
                          std::vector<double>(30, 0.0)});

  for (uint64_t seed = 0; seed < 64; ++seed) {
    SilenceAttackInfo info;
    ConcatSilenceAttack(clip, pool, seed, &info);
    CHECK(pool.entries[info.head_entry].position == PoolPosition::kHead);
    CHECK(pool.entries[info.tail_entry].position == PoolPosition::kTail);
  }
}

TEST_CASE("concat attack falls back to any entry when positions run out") {
  const AudioClip clip = MakeTone(440.0, 0.5, 4000);
  SilencePool pool;
  pool.sample_rate = 16000;
  pool.entries.push_back({"T1", PoolPosition::kTail,
                          std::vector<double>(40, 0.0)});
  pool.entries.push_back({"T2", PoolPosition::kTail,
                          std::vector<double>(60, 0.0)});

  bool saw[2] = {false, false};
  for (uint64_t seed = 0; seed < 64; ++seed) {
    SilenceAttackInfo info;
    const AudioClip out = ConcatSilenceAttack(clip, pool, seed, &info);
    REQUIRE(info.head_entry < 2);
    saw[info.head_entry] = true;
    CHECK(out.num_samples() ==
          static_cast<int64_t>(pool.entries[info.head_entry].samples.size()) +
              4000 + info.tail_samples);
  }
  CHECK(saw[0]);
  CHECK(saw[1]);
}

TEST_CASE("concat attack draws are seeded and roughly uniform") {
  const AudioClip clip = MakeTone(200.0, 0.4, 4000);
  SilencePool pool;
  pool.sample_rate = 16000;
  for (int i = 0; i < 3; ++i) {
    pool.entries.push_back({"H" + std::to_string(i), PoolPosition::kHead,
                            std::vector<double>(16 + i, 0.0)});
  }
  pool.entries.push_back({"T", PoolPosition::kTail,
                          std::vector<double>(8, 0.0)});

  std::array<int, 3> counts = {0, 0, 0};
  for (uint64_t seed = 0; seed < 600; ++seed) {
    SilenceAttackInfo info;
    const AudioClip a = ConcatSilenceAttack(clip, pool, seed, &info);
    const AudioClip b = ConcatSilenceAttack(clip, pool, seed);
    CHECK(a.samples == b.samples);  // same seed, same output
    counts[info.head_entry] += 1;
  }
  for (int c : counts) {
    CHECK(c > 100);  // each head entry gets drawn often
  }
}

TEST_CASE("concat attack rejects unusable pools") {
  const AudioClip clip = MakeTone(440.0, 0.5, 4000);
  SilencePool empty;
  CHECK_THROWS_AS(ConcatSilenceAttack(clip, empty, 0), ValueError);

  SilencePool wrong_rate = TwoEntryPool();
  wrong_rate.sample_rate = 8000;
  CHECK_THROWS_AS(ConcatSilenceAttack(clip, wrong_rate, 0), ValueError);
}

TEST_CASE("white noise attack hits its target SNR") {
  const AudioClip clip = MakeTone(440.0, 0.5, 5 * 16000);
  VadConfig cfg;
  cfg.adaptive = false;
  const VadLabels labels = LabelFrames(clip, cfg);
  const double snr_db = 10.0;

  // Find a draw whose pads are both long enough for a stable RMS estimate.
  for (uint64_t seed = 0;; ++seed) {
    REQUIRE(seed < 100);
    WhiteNoiseInfo info;
    const AudioClip out = WhiteNoiseAttack(clip, labels, snr_db, seed, &info);
    REQUIRE(info.head_samples >= 1);
    REQUIRE(info.tail_samples >= 1);
    REQUIRE(out.num_samples() ==
            info.head_samples + clip.num_samples() + info.tail_samples);
    if (info.head_samples < 4000 || info.tail_samples < 4000) continue;

    // Tone at 0.5 amplitude: speech RMS is 0.5 / sqrt(2).
    CHECK(info.speech_rms == doctest::Approx(0.5 / std::sqrt(2.0))
                                 .epsilon(1e-3));
    CHECK(info.noise_rms_target ==
          doctest::Approx(info.speech_rms / std::pow(10.0, snr_db / 20.0)));

    double sum_sq = 0.0;
    int64_t n_noise = 0;
    for (int64_t i = 0; i < info.head_samples; ++i, ++n_noise) {
      sum_sq += out.samples[i] * out.samples[i];
    }
    for (int64_t i = info.head_samples + clip.num_samples();
         i < out.num_samples(); ++i, ++n_noise) {
      sum_sq += out.samples[i] * out.samples[i];
    }
    const double noise_rms = std::sqrt(sum_sq / n_noise);
    const double measured = 20.0 * std::log10(info.speech_rms / noise_rms);
    CHECK(std::abs(measured - snr_db) <= 0.5);
    CHECK(info.measured_snr_db == doctest::Approx(measured).epsilon(1e-9));

    // Middle still verbatim.
    for (int64_t i = 0; i < clip.num_samples(); ++i) {
      CHECK(out.samples[info.head_samples + i] == clip.samples[i]);
    }
    break;
  }
}

TEST_CASE("white noise pad lengths are uniform on (0, 0.4 T)") {
  const AudioClip clip = MakeTone(300.0, 0.5, 5 * 16000);
  VadConfig cfg;
  cfg.adaptive = false;
  const VadLabels labels = LabelFrames(clip, cfg);
  const int64_t max_pad = static_cast<int64_t>(0.4 * 5.0 * 16000);

  double total = 0.0;
  int64_t n = 0;
  for (uint64_t seed = 0; seed < 400; ++seed) {
    WhiteNoiseInfo info;
    WhiteNoiseAttack(clip, labels, 10.0, seed, &info);
    CHECK(info.head_samples >= 1);
    CHECK(info.tail_samples >= 1);
    CHECK(info.head_samples <= max_pad);
    CHECK(info.tail_samples <= max_pad);
    total += static_cast<double>(info.head_samples + info.tail_samples);
    n += 2;
  }
  // Mean of U(0, 2 s) is 1 s; 800 draws keep the sample mean well inside.
  const double mean_s = total / static_cast<double>(n) / 16000.0;
  CHECK(std::abs(mean_s - 1.0) <= 0.1);
}

TEST_CASE("white noise attack is deterministic per seed") {
  const AudioClip clip = MakeNoise(0.4, 16000, 77);
  VadConfig cfg;
  cfg.adaptive = false;
  const VadLabels labels = LabelFrames(clip, cfg);
  const AudioClip a = WhiteNoiseAttack(clip, labels, 20.0, 5);
  const AudioClip b = WhiteNoiseAttack(clip, labels, 20.0, 5);
  const AudioClip c = WhiteNoiseAttack(clip, labels, 20.0, 6);
  CHECK(a.samples == b.samples);
  CHECK(a.samples != c.samples);
}

TEST_CASE("white noise attack rejects an empty clip") {
  AudioClip clip;
  VadLabels labels;
  CHECK_THROWS_AS(WhiteNoiseAttack(clip, labels, 10.0, 0), ValueError);
}

TEST_CASE("attack kinds parse from either spelling") {
  CHECK(AttackKindFromString("bona") == AttackKind::kBonafideSilence);
  CHECK(AttackKindFromString("bonafide-silence") ==
        AttackKind::kBonafideSilence);
  CHECK(AttackKindFromString("spoof") == AttackKind::kSpoofSilence);
  CHECK(AttackKindFromString("spoof-silence") == AttackKind::kSpoofSilence);
  CHECK(AttackKindFromString("white") == AttackKind::kWhiteNoise);
  CHECK(AttackKindFromString("white-noise") == AttackKind::kWhiteNoise);
  CHECK_THROWS_AS(AttackKindFromString("pink"), ConfigError);
  CHECK_THROWS_AS(AttackKindFromString(""), ConfigError);

  for (AttackKind kind : {AttackKind::kBonafideSilence,
                          AttackKind::kSpoofSilence, AttackKind::kWhiteNoise}) {
    CHECK(AttackKindFromString(AttackKindName(kind)) == kind);
  }
}

}  // namespace
}  // namespace silencelab
