// tests/test_synth.cc

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
#include <fstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "silencelab/error.h"
#include "silencelab/silence_analysis.h"
#include "silencelab/synth.h"
#include "silencelab/vad.h"
#include "tests/testutil.h"

namespace silencelab {
namespace {

using testing::TempDir;

SyntheticCorpusSpec SmallSpec() {
  SyntheticCorpusSpec spec;
  spec.n_bonafide = 8;
  spec.n_per_attack = 4;
  spec.bonafide = {0.4, 0.05, SilenceKind::kNaturalNoise};
  spec.attack_profiles["A01"] = {0.1, 0.05, SilenceKind::kNaturalNoise};
  spec.attack_profiles["A02"] = {0.4, 0.05, SilenceKind::kDigitalZero};
  spec.seed = 17;
  return spec;
}

// Matches the generator's layout contract: the detector (with the spec's
// hangover) should land on the drawn proportion, so compare via VAD.
VadConfig DetectorConfig(const SyntheticCorpusSpec &spec) {
  VadConfig cfg;
  cfg.frame_ms = spec.frame_ms;
  cfg.hangover_frames = spec.hangover_compensation;
  cfg.adaptive = false;
  return cfg;
}

TEST_CASE("synthetic trial list layout") {
  const auto records = SyntheticRecords(SmallSpec());
  REQUIRE(records.size() == 8 + 2 * 4);

  for (size_t i = 0; i < records.size(); ++i) {
    char want[32];
    std::snprintf(want, sizeof want, "SYN_%07zu", i);
    CHECK(records[i].utt_id == want);
  }
  for (size_t i = 0; i < 8; ++i) {
    CHECK(records[i].key == TrialKey::kBonafide);
    CHECK(records[i].attack_id == "-");
  }
  for (size_t i = 8; i < 12; ++i) CHECK(records[i].attack_id == "A01");
  for (size_t i = 12; i < 16; ++i) CHECK(records[i].attack_id == "A02");
}

TEST_CASE("clips regenerate byte-identically and per utt") {
  const SyntheticCorpusSpec spec = SmallSpec();
  const auto records = SyntheticRecords(spec);

  const AudioClip a = SynthClip(spec, records[3]);
  const AudioClip b = SynthClip(spec, records[3]);
  CHECK(a.samples == b.samples);

  // Regeneration does not depend on which other clips were made.
  const AudioClip c = SynthClip(spec, records[10]);
  const AudioClip d = SynthClip(spec, records[10]);
  CHECK(c.samples == d.samples);
  CHECK(a.samples != c.samples);
}

TEST_CASE("a different corpus seed moves every clip") {
  SyntheticCorpusSpec spec = SmallSpec();
  const auto records = SyntheticRecords(spec);
  const AudioClip a = SynthClip(spec, records[0]);
  spec.seed = 18;
  const AudioClip b = SynthClip(spec, records[0]);
  CHECK(a.samples != b.samples);
}

TEST_CASE("detected proportions track the class targets") {
  const SyntheticCorpusSpec spec = SmallSpec();
  const VadConfig cfg = DetectorConfig(spec);

  double sum_bona = 0.0, sum_a01 = 0.0;
  int n_bona = 0, n_a01 = 0;
  ForEachSyntheticClip(spec, [&](const TrialRecord &rec,
                                 const AudioClip &clip) {
    const double p = ProportionOfSilence(LabelFrames(clip, cfg));
    if (rec.key == TrialKey::kBonafide) {
      sum_bona += p;
      ++n_bona;
    } else if (rec.attack_id == "A01") {
      sum_a01 += p;
      ++n_a01;
    }
  });
  REQUIRE(n_bona == 8);
  REQUIRE(n_a01 == 4);
  // Gaussian targets 0.4 and 0.1 with sd 0.05; means of 8 and 4 draws stay
  // within a few standard errors plus frame rounding.
  CHECK(std::abs(sum_bona / n_bona - 0.4) <= 0.08);
  CHECK(std::abs(sum_a01 / n_a01 - 0.1) <= 0.08);
}

TEST_CASE("hangover compensation leaves headroom for the relabeling pass") {
  // Without compensation the detector undercounts silence by the hangover
  // frames it relabels; the generator pads for exactly that.
  const SyntheticCorpusSpec spec = SmallSpec();
  VadConfig with_hangover = DetectorConfig(spec);
  VadConfig without = with_hangover;
  without.hangover_frames = 0;

  ForEachSyntheticClip(spec, [&](const TrialRecord &,
                                 const AudioClip &clip) {
    const double p_with =
        ProportionOfSilence(LabelFrames(clip, with_hangover));
    const double p_without =
        ProportionOfSilence(LabelFrames(clip, without));
    CHECK(p_without >= p_with);
  });
}

TEST_CASE("digital-zero silence really is zero") {
  SyntheticCorpusSpec spec = SmallSpec();
  spec.n_bonafide = 0;
  spec.attack_profiles.clear();
  spec.attack_profiles["VC"] = {0.4, 0.05, SilenceKind::kDigitalZero};
  spec.n_per_attack = 4;

  const VadConfig cfg = DetectorConfig(spec);
  ForEachSyntheticClip(spec, [&](const TrialRecord &,
                                 const AudioClip &clip) {
    const VadLabels labels = LabelFrames(clip, cfg);
    const int frame = FrameSamples(clip.sample_rate, labels.frame_ms);
    int64_t silence_frames = 0;
    for (int64_t f = 0; f < labels.num_frames(); ++f) {
      if (labels.labels[f] != FrameLabel::kSilence) continue;
      ++silence_frames;
      for (int64_t i = f * frame; i < (f + 1) * frame; ++i) {
        CHECK(clip.samples[i] == 0.0);
      }
    }
    CHECK(silence_frames > 0);
  });
}

TEST_CASE("natural-noise silence sits near room tone level") {
  const SyntheticCorpusSpec spec = SmallSpec();
  const VadConfig cfg = DetectorConfig(spec);
  ForEachSyntheticClip(spec, [&](const TrialRecord &rec,
                                 const AudioClip &clip) {
    if (rec.key != TrialKey::kBonafide) return;
    const VadLabels labels = LabelFrames(clip, cfg);
    const int frame = FrameSamples(clip.sample_rate, labels.frame_ms);
    for (int64_t f = 0; f < labels.num_frames(); ++f) {
      if (labels.labels[f] != FrameLabel::kSilence) continue;
      const double dbfs = FrameRmsDbfs(
          {clip.samples.data() + f * frame, static_cast<size_t>(frame)});
      // Drawn from (-68, -62); hangover-relabeled speech frames are the
      // exception but those are labeled speech, not silence.
      CHECK(dbfs > -75.0);
      CHECK(dbfs < -55.0);
    }
  });
}

TEST_CASE("corpus generation writes playable files and a manifest") {
  TempDir tmp;
  SyntheticCorpusSpec spec = SmallSpec();
  spec.n_bonafide = 2;
  spec.n_per_attack = 1;

  const auto records = GenerateSyntheticCorpus(spec, tmp.path());
  REQUIRE(records.size() == 4);

  const auto parsed = ParseManifest(tmp / "manifest.txt");
  REQUIRE(parsed.size() == 4);
  for (size_t i = 0; i < 4; ++i) {
    CHECK(parsed[i].utt_id == records[i].utt_id);
    CHECK(parsed[i].key == records[i].key);
    const AudioClip clip =
        ReadWav(AudioPathFor(tmp.path() / "wav", records[i].utt_id));
    CHECK(clip.sample_rate == spec.sample_rate);
    CHECK(clip.duration_s() >= spec.duration_min_s - 1e-9);
    CHECK(clip.duration_s() <= spec.duration_max_s + 1e-9);
  }

  // Second run into a fresh directory is byte-identical.
  TempDir tmp2;
  GenerateSyntheticCorpus(spec, tmp2.path());
  CHECK(testing::FilesIdentical(tmp / "manifest.txt", tmp2 / "manifest.txt"));
  for (const auto &rec : records) {
    CHECK(testing::FilesIdentical(
        AudioPathFor(tmp.path() / "wav", rec.utt_id),
        AudioPathFor(tmp2.path() / "wav", rec.utt_id)));
  }
}

TEST_CASE("spoof-only corpora are allowed") {
  SyntheticCorpusSpec spec = SmallSpec();
  spec.n_bonafide = 0;
  const auto records = SyntheticRecords(spec);
  REQUIRE(records.size() == 8);
  for (const auto &rec : records) CHECK(rec.key == TrialKey::kSpoof);
}

TEST_CASE("spec validation") {
  SyntheticCorpusSpec spec = SmallSpec();

  SUBCASE("good spec passes") { spec.Validate(); }
  SUBCASE("negative counts") {
    spec.n_bonafide = -1;
    CHECK_THROWS_AS(spec.Validate(), ConfigError);
  }
  SUBCASE("tiny durations") {
    spec.duration_min_s = 0.1;
    CHECK_THROWS_AS(spec.Validate(), ConfigError);
  }
  SUBCASE("inverted duration range") {
    spec.duration_min_s = 5.0;
    spec.duration_max_s = 4.0;
    CHECK_THROWS_AS(spec.Validate(), ConfigError);
  }
  SUBCASE("proportion outside (0, 1)") {
    spec.bonafide.proportion_mean = 0.0;
    CHECK_THROWS_AS(spec.Validate(), ConfigError);
  }
  SUBCASE("reserved attack id") {
    spec.attack_profiles["-"] = {0.4, 0.05, SilenceKind::kNaturalNoise};
    CHECK_THROWS_AS(spec.Validate(), ConfigError);
  }
}

TEST_CASE("spec files parse strictly") {
  TempDir tmp;
  const auto path = tmp / "spec.json";

  SUBCASE("round trip of a full spec") {
    std::ofstream(path) << R"({
      "n_bonafide": 3,
      "n_per_attack": 2,
      "seed": 9,
      "duration_s": [3.5, 4.5],
      "bonafide": {"proportion_mean": 0.4, "proportion_std": 0.05,
                   "silence_kind": "natural_noise"},
      "attacks": {
        "TTS": {"proportion_mean": 0.1, "proportion_std": 0.05,
                "silence_kind": "natural_noise"},
        "VC": {"proportion_mean": 0.4, "proportion_std": 0.05,
               "silence_kind": "digital_zero"}
      }
    })";
    const SyntheticCorpusSpec spec = SyntheticCorpusSpec::FromJsonFile(path);
    CHECK(spec.n_bonafide == 3);
    CHECK(spec.n_per_attack == 2);
    CHECK(spec.seed == 9);
    CHECK(spec.duration_min_s == doctest::Approx(3.5));
    CHECK(spec.duration_max_s == doctest::Approx(4.5));
    REQUIRE(spec.attack_profiles.size() == 2);
    CHECK(spec.attack_profiles.at("VC").silence_kind ==
          SilenceKind::kDigitalZero);
    CHECK(spec.attack_profiles.at("TTS").proportion_mean ==
          doctest::Approx(0.1));
  }
  SUBCASE("unknown keys are rejected") {
    std::ofstream(path) << R"({"n_bonafide": 3, "n_per_attack": 2,
                               "bogus": true})";
    CHECK_THROWS_AS(SyntheticCorpusSpec::FromJsonFile(path), ConfigError);
  }
  SUBCASE("unknown silence kind is rejected") {
    std::ofstream(path) << R"({
      "n_bonafide": 1, "n_per_attack": 0,
      "bonafide": {"silence_kind": "brown_noise"}
    })";
    CHECK_THROWS_AS(SyntheticCorpusSpec::FromJsonFile(path), ConfigError);
  }
  SUBCASE("malformed json is a format error") {
    std::ofstream(path) << "{nope";
    CHECK_THROWS_AS(SyntheticCorpusSpec::FromJsonFile(path), FormatError);
  }
}

}  // namespace
}  // namespace silencelab
