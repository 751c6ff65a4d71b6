// src/synth.cc

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

#include "silencelab/synth.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "json.hpp"
#include "silencelab/error.h"
#include "silencelab/rng.h"
#include "silencelab/transforms.h"
#include "silencelab/vad.h"

namespace silencelab {

namespace {

constexpr double kMinProportion = 0.02;
constexpr double kMaxProportion = 0.95;

struct Run {
  bool speech = false;
  int64_t frames = 0;
};

// All random layout decisions happen here, in a fixed draw order, before
// any sample synthesis.
struct ClipPlan {
  std::vector<Run> runs;
  int64_t partial_samples = 0;
  double silence_level_db = -65.0;
  double speech_level_db = -15.0;
  double f0 = 120.0;
  int harmonics = 3;
  std::array<double, 5> phases = {};
  double am_phase = 0.0;
};

ClipPlan PlanClip(const SyntheticCorpusSpec &spec, const ClassProfile &profile,
                  Rng *rng) {
  const int frame = FrameSamples(spec.sample_rate, spec.frame_ms);
  const double dur = rng->Uniform(spec.duration_min_s, spec.duration_max_s);
  const int64_t n_frames =
      std::max<int64_t>(20, std::llround(dur * 1000.0 / spec.frame_ms));
  const double p =
      std::clamp(rng->Gaussian(profile.proportion_mean, profile.proportion_std),
                 kMinProportion, kMaxProportion);
  int64_t n_sil = std::llround(p * static_cast<double>(n_frames));
  n_sil = std::clamp<int64_t>(n_sil, 0, n_frames - 2);

  int pauses = static_cast<int>(rng->UniformBelow(3));  // interior pauses
  const double head_frac = rng->Uniform(0.30, 0.50);
  const double tail_frac = rng->Uniform(0.25, 0.45);

  const int64_t h = spec.hangover_compensation;
  int64_t head = 0, tail = 0, interior = 0;
  int64_t n_speech = 0;
  for (bool ok = false; !ok;) {
    head = std::llround(head_frac * static_cast<double>(n_sil));
    tail = std::llround(tail_frac * static_cast<double>(n_sil));
    interior = n_sil - head - tail;
    if (interior < 0) {
      tail += interior;
      interior = 0;
      if (tail < 0) {
        head += tail;
        tail = 0;
      }
    }
    // Every pause needs at least one frame; leftovers with no pause to hold
    // them move to the tail.
    if (pauses > interior) pauses = static_cast<int>(interior);
    if (pauses == 0 && interior > 0) {
      tail += interior;
      interior = 0;
    }
    // The detector's hangover converts this many layout frames to speech.
    const int64_t eaten = h * (pauses + (tail > 0 ? 1 : 0));
    n_speech = n_frames - n_sil - eaten;
    if (n_speech >= 2 * (pauses + 1)) {
      ok = true;
    } else if (pauses > 0) {
      --pauses;
    } else {
      // Oversized silence target for this duration; shrink it and retry.
      n_sil = std::max<int64_t>(0, n_frames - 2 - h);
    }
  }

  ClipPlan plan;
  // Layout: [head][speech][pause+h][speech]...[speech][tail+h]
  if (head > 0) plan.runs.push_back({false, head});
  const int speech_runs = pauses + 1;
  const int64_t speech_base = n_speech / speech_runs;
  int64_t speech_rem = n_speech % speech_runs;
  const int64_t pause_base = pauses > 0 ? interior / pauses : 0;
  int64_t pause_rem = pauses > 0 ? interior % pauses : 0;
  for (int i = 0; i < speech_runs; ++i) {
    int64_t s = speech_base + (speech_rem > 0 ? 1 : 0);
    if (speech_rem > 0) --speech_rem;
    plan.runs.push_back({true, s});
    if (i < pauses) {
      int64_t q = pause_base + (pause_rem > 0 ? 1 : 0);
      if (pause_rem > 0) --pause_rem;
      plan.runs.push_back({false, q + h});
    }
  }
  if (tail > 0) plan.runs.push_back({false, tail + h});

  plan.partial_samples = static_cast<int64_t>(rng->UniformBelow(frame));
  plan.silence_level_db = rng->Uniform(-68.0, -62.0);
  plan.speech_level_db = rng->Uniform(-18.0, -12.0);
  plan.f0 = rng->Uniform(90.0, 250.0);
  plan.harmonics = 3 + static_cast<int>(rng->UniformBelow(3));
  for (int i = 0; i < plan.harmonics; ++i) {
    plan.phases[i] = rng->Uniform(0.0, 2.0 * M_PI);
  }
  plan.am_phase = rng->Uniform(0.0, 2.0 * M_PI);
  return plan;
}

void ScaleToRms(std::vector<double>::iterator begin,
                std::vector<double>::iterator end, double target_rms) {
  double acc = 0.0;
  int64_t n = 0;
  for (auto it = begin; it != end; ++it, ++n) acc += *it * *it;
  if (n == 0) return;
  const double rms = std::sqrt(acc / static_cast<double>(n));
  if (rms <= 0.0) return;
  const double g = target_rms / rms;
  for (auto it = begin; it != end; ++it) *it *= g;
}

void FillSilence(std::vector<double> *samples, int64_t start, int64_t len,
                 SilenceKind kind, double level_db, int sample_rate,
                 Rng *rng) {
  if (len <= 0) return;
  const double rms = std::pow(10.0, level_db / 20.0);
  switch (kind) {
    case SilenceKind::kDigitalZero:
      std::fill_n(samples->begin() + start, len, 0.0);
      break;
    case SilenceKind::kNaturalNoise: {
      const double amp = rms * std::sqrt(3.0);
      for (int64_t i = 0; i < len; ++i) {
        (*samples)[start + i] = amp * (2.0 * rng->Uniform01() - 1.0);
      }
      break;
    }
    case SilenceKind::kFiltered: {
      AudioClip noise;
      noise.sample_rate = sample_rate;
      noise.samples.resize(len);
      for (double &s : noise.samples) s = 2.0 * rng->Uniform01() - 1.0;
      const ButterworthLowPass lp(1000.0, sample_rate);
      noise = lp.Filter(noise);
      ScaleToRms(noise.samples.begin(), noise.samples.end(), rms);
      std::copy(noise.samples.begin(), noise.samples.end(),
                samples->begin() + start);
      break;
    }
  }
}

void FillSpeech(std::vector<double> *samples, int64_t start, int64_t len,
                const ClipPlan &plan, int sample_rate) {
  const double rms = std::pow(10.0, plan.speech_level_db / 20.0);
  for (int64_t i = 0; i < len; ++i) {
    const double t = static_cast<double>(i) / sample_rate;
    double v = 0.0;
    for (int k = 0; k < plan.harmonics; ++k) {
      v += std::sin(2.0 * M_PI * plan.f0 * (k + 1) * t + plan.phases[k]) /
           (k + 1);
    }
    const double am = 1.0 + 0.25 * std::sin(2.0 * M_PI * 3.0 * t + plan.am_phase);
    (*samples)[start + i] = am * v;
  }
  ScaleToRms(samples->begin() + start, samples->begin() + start + len, rms);
}

}  // namespace

void SyntheticCorpusSpec::Validate() const {
  if (n_bonafide < 0 || n_per_attack < 0) {
    throw ConfigError("negative corpus size");
  }
  if (!(duration_min_s >= 0.5) || !(duration_max_s >= duration_min_s)) {
    throw ConfigError("duration range must satisfy 0.5 <= min <= max");
  }
  if (hangover_compensation < 0) {
    throw ConfigError("negative hangover compensation");
  }
  FrameSamples(sample_rate, frame_ms);  // throws when inconsistent
  auto check_profile = [](const std::string &name, const ClassProfile &p) {
    if (!(p.proportion_mean > 0.0) || !(p.proportion_mean < 1.0) ||
        !(p.proportion_std >= 0.0)) {
      throw ConfigError("bad proportion distribution for " + name);
    }
  };
  check_profile("bonafide", bonafide);
  for (const auto &[id, p] : attack_profiles) {
    if (id.empty() || id == "-") throw ConfigError("bad attack id");
    check_profile(id, p);
  }
}

namespace {

SilenceKind SilenceKindFromString(const std::string &s) {
  if (s == "natural_noise") return SilenceKind::kNaturalNoise;
  if (s == "digital_zero") return SilenceKind::kDigitalZero;
  if (s == "filtered") return SilenceKind::kFiltered;
  throw ConfigError("unknown silence_kind '" + s + "'");
}

ClassProfile ProfileFromJson(const nlohmann::json &j) {
  ClassProfile p;
  for (const auto &[key, value] : j.items()) {
    if (key == "proportion_mean") {
      p.proportion_mean = value.get<double>();
    } else if (key == "proportion_std") {
      p.proportion_std = value.get<double>();
    } else if (key == "silence_kind") {
      p.silence_kind = SilenceKindFromString(value.get<std::string>());
    } else {
      throw ConfigError("unknown profile key '" + key + "'");
    }
  }
  return p;
}

}  // namespace

SyntheticCorpusSpec SyntheticCorpusSpec::FromJsonFile(
    const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception &e) {
    throw FormatError(path.string() + ": " + e.what());
  }

  SyntheticCorpusSpec spec;
  for (const auto &[key, value] : j.items()) {
    if (key == "n_bonafide") {
      spec.n_bonafide = value.get<int>();
    } else if (key == "n_per_attack") {
      spec.n_per_attack = value.get<int>();
    } else if (key == "bonafide") {
      spec.bonafide = ProfileFromJson(value);
    } else if (key == "attacks") {
      for (const auto &[id, pj] : value.items()) {
        spec.attack_profiles[id] = ProfileFromJson(pj);
      }
    } else if (key == "duration_s") {
      spec.duration_min_s = value.at(0).get<double>();
      spec.duration_max_s = value.at(1).get<double>();
    } else if (key == "seed") {
      spec.seed = value.get<uint64_t>();
    } else if (key == "sample_rate") {
      spec.sample_rate = value.get<int>();
    } else if (key == "frame_ms") {
      spec.frame_ms = value.get<int>();
    } else if (key == "hangover_compensation") {
      spec.hangover_compensation = value.get<int>();
    } else {
      throw ConfigError(path.string() + ": unknown key '" + key + "'");
    }
  }
  spec.Validate();
  return spec;
}

std::vector<TrialRecord> SyntheticRecords(const SyntheticCorpusSpec &spec) {
  spec.Validate();
  std::vector<TrialRecord> records;
  int64_t index = 0;
  auto next_record = [&index](const std::string &attack, TrialKey key) {
    char utt[32], spk[32];
    std::snprintf(utt, sizeof utt, "SYN_%07lld",
                  static_cast<long long>(index));
    std::snprintf(spk, sizeof spk, "SYN_SPK%02lld",
                  static_cast<long long>(index % 23));
    ++index;
    return TrialRecord{spk, utt, attack, key};
  };
  for (int i = 0; i < spec.n_bonafide; ++i) {
    records.push_back(next_record("-", TrialKey::kBonafide));
  }
  for (const auto &[attack, profile] : spec.attack_profiles) {
    for (int i = 0; i < spec.n_per_attack; ++i) {
      records.push_back(next_record(attack, TrialKey::kSpoof));
    }
  }
  return records;
}

AudioClip SynthClip(const SyntheticCorpusSpec &spec, const TrialRecord &rec) {
  const ClassProfile &profile =
      rec.key == TrialKey::kBonafide ? spec.bonafide
                                     : spec.attack_profiles.at(rec.attack_id);
  Rng rng(DeriveSeed(spec.seed, rec.utt_id));
  const ClipPlan plan = PlanClip(spec, profile, &rng);
  const int frame = FrameSamples(spec.sample_rate, spec.frame_ms);

  int64_t total_frames = 0;
  for (const Run &r : plan.runs) total_frames += r.frames;

  AudioClip clip;
  clip.sample_rate = spec.sample_rate;
  clip.source_id = rec.utt_id;
  clip.samples.assign(total_frames * frame + plan.partial_samples, 0.0);

  int64_t pos = 0;
  for (const Run &r : plan.runs) {
    const int64_t len = r.frames * frame;
    if (r.speech) {
      FillSpeech(&clip.samples, pos, len, plan, spec.sample_rate);
    } else {
      FillSilence(&clip.samples, pos, len, profile.silence_kind,
                  plan.silence_level_db, spec.sample_rate, &rng);
    }
    pos += len;
  }
  FillSilence(&clip.samples, pos, plan.partial_samples, profile.silence_kind,
              plan.silence_level_db, spec.sample_rate, &rng);
  return clip;
}

void ForEachSyntheticClip(
    const SyntheticCorpusSpec &spec,
    const std::function<void(const TrialRecord &, const AudioClip &)> &fn) {
  const std::vector<TrialRecord> records = SyntheticRecords(spec);
  for (const TrialRecord &rec : records) {
    fn(rec, SynthClip(spec, rec));
  }
}

std::vector<TrialRecord> GenerateSyntheticCorpus(
    const SyntheticCorpusSpec &spec, const std::filesystem::path &out_dir) {
  const std::vector<TrialRecord> records = SyntheticRecords(spec);
  std::filesystem::create_directories(out_dir / "wav");
  for (const TrialRecord &rec : records) {
    const AudioClip clip = SynthClip(spec, rec);
    WriteWav(clip, AudioPathFor(out_dir / "wav", rec.utt_id),
             WavBitDepth::kInt16);
  }
  WriteManifest(records, out_dir / "manifest.txt");
  return records;
}

}  // namespace silencelab
