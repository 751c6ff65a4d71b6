// src/pipeline.cc

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

#include "silencelab/pipeline.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <thread>

#include "silencelab/attacks.h"
#include "silencelab/audio_io.h"
#include "silencelab/error.h"
#include "silencelab/features.h"
#include "silencelab/rng.h"
#include "silencelab/scoring.h"
#include "silencelab/silence_analysis.h"
#include "silencelab/transforms.h"

namespace silencelab {

namespace {

// Per-op parameter schema: name -> (allowed keys, required keys).
struct OpSchema {
  std::set<std::string> allowed;
  std::set<std::string> required;
};

const std::map<std::string, OpSchema> &StepSchemas() {
  static const std::map<std::string, OpSchema> kSchemas = {
      {"vad", {{}, {}}},
      {"remove", {{}, {}}},
      {"sil-mask", {{}, {}}},
      {"speech-mask", {{}, {}}},
      {"lowpass", {{"cutoff_hz"}, {}}},
      {"fixlen-reflect", {{"target_seconds"}, {"target_seconds"}}},
      {"fixlen-repeat", {{"target_seconds"}, {"target_seconds"}}},
      {"resample", {{"target_hz"}, {}}},
      {"attack", {{"kind", "pool", "snr_db"}, {"kind"}}},
      {"features", {{"type", "fix_seconds"}, {"type"}}},
      {"score", {{"scorer"}, {"scorer"}}},
  };
  return kSchemas;
}

void ValidateStep(const PipelineStep &step) {
  const auto it = StepSchemas().find(step.op);
  if (it == StepSchemas().end()) {
    throw ConfigError("unknown pipeline op '" + step.op + "'");
  }
  const OpSchema &schema = it->second;
  for (const auto &[key, value] : step.params.items()) {
    if (schema.allowed.count(key) == 0) {
      throw ConfigError("op '" + step.op + "' does not take parameter '" +
                        key + "'");
    }
  }
  for (const std::string &key : schema.required) {
    if (!step.params.contains(key)) {
      throw ConfigError("op '" + step.op + "' requires parameter '" + key +
                        "'");
    }
  }
  if (step.op == "attack") {
    const AttackKind kind =
        AttackKindFromString(step.params.at("kind").get<std::string>());
    if (kind != AttackKind::kWhiteNoise && !step.params.contains("pool")) {
      throw ConfigError("this attack kind requires a pool file");
    }
  }
  if (step.op == "features") {
    const std::string type = step.params.at("type").get<std::string>();
    if (type != "stft" && type != "lfcc") {
      throw ConfigError("unknown feature type '" + type + "'");
    }
    if (type == "stft" && step.params.contains("fix_seconds")) {
      throw ConfigError("fix_seconds only applies to lfcc features");
    }
  }
  if (step.op == "score") {
    const std::string scorer = step.params.at("scorer").get<std::string>();
    if (scorer != "proportion" && scorer != "silence-energy") {
      throw ConfigError("unknown scorer '" + scorer + "'");
    }
  }
}

VadConfig VadFromJson(const nlohmann::json &j) {
  VadConfig cfg;
  for (const auto &[key, value] : j.items()) {
    if (key == "frame_ms") {
      cfg.frame_ms = value.get<int>();
    } else if (key == "threshold_db") {
      cfg.threshold_db = value.get<double>();
    } else if (key == "hangover_frames") {
      cfg.hangover_frames = value.get<int>();
    } else if (key == "adaptive") {
      cfg.adaptive = value.get<bool>();
    } else if (key == "adaptive_margin_db") {
      cfg.adaptive_margin_db = value.get<double>();
    } else {
      throw ConfigError("unknown vad key '" + key + "'");
    }
  }
  return cfg;
}

OutputDepth DepthFromString(const std::string &s) {
  if (s == "preserve") return OutputDepth::kPreserve;
  if (s == "int16") return OutputDepth::kInt16;
  if (s == "float32") return OutputDepth::kFloat32;
  throw ConfigError("unknown output_depth '" + s + "'");
}

// Everything a worker needs that is shared and immutable during the run.
struct RunContext {
  const PipelineConfig *config = nullptr;
  const std::vector<TrialRecord> *records = nullptr;
  std::map<std::string, SilencePool> pools;  // keyed by config path string
  bool wants_features = false;
  bool wants_scores = false;
};

struct ClipOutcome {
  bool ok = false;
  std::string error;
  bool has_score = false;
  double score = 0.0;
  nlohmann::json attack_info;  // null unless an attack ran on this clip
};

ClipOutcome ProcessRecord(const RunContext &ctx, const TrialRecord &rec) {
  const PipelineConfig &cfg = *ctx.config;
  ClipOutcome out;
  try {
    AudioClip clip = ReadWav(AudioPathFor(cfg.audio_dir, rec.utt_id));
    const uint64_t utt_seed = DeriveSeed(cfg.seed, rec.utt_id);

    // Labels are recomputed lazily after any step that changes the clip.
    std::optional<VadLabels> labels;
    auto current_labels = [&]() -> const VadLabels & {
      if (!labels.has_value()) labels = LabelFrames(clip, cfg.vad);
      return *labels;
    };

    for (size_t si = 0; si < cfg.steps.size(); ++si) {
      const PipelineStep &step = cfg.steps[si];
      const uint64_t step_seed =
          SplitMix64(utt_seed ^ (static_cast<uint64_t>(si) *
                                 0x9E3779B97F4A7C15ull));
      if (step.op == "vad") {
        labels = LabelFrames(clip, cfg.vad);
      } else if (step.op == "remove") {
        clip = RemoveSilence(clip, current_labels());
        labels.reset();
      } else if (step.op == "sil-mask") {
        clip = MaskSilence(clip, current_labels());
        labels.reset();
      } else if (step.op == "speech-mask") {
        clip = MaskSpeech(clip, current_labels());
        labels.reset();
      } else if (step.op == "lowpass") {
        const double cutoff = step.params.value("cutoff_hz", 1000.0);
        clip = ButterworthLowPass(cutoff, clip.sample_rate).Filter(clip);
        labels.reset();
      } else if (step.op == "fixlen-reflect" || step.op == "fixlen-repeat") {
        const double seconds = step.params.at("target_seconds").get<double>();
        const int64_t target =
            std::llround(seconds * static_cast<double>(clip.sample_rate));
        clip = step.op == "fixlen-reflect"
                   ? FixLengthReflect(clip, target)
                   : FixLengthRepeat(clip, target, step_seed);
        labels.reset();
      } else if (step.op == "resample") {
        const int target_hz = step.params.value("target_hz", 16000);
        clip = ResampleLinear(clip, target_hz);
        labels.reset();
      } else if (step.op == "attack") {
        if (rec.key != TrialKey::kSpoof) continue;  // attacks spare bonafide
        const AttackKind akind =
            AttackKindFromString(step.params.at("kind").get<std::string>());
        const char *kind = AttackKindName(akind);
        if (akind == AttackKind::kWhiteNoise) {
          const double snr_db = step.params.value("snr_db", 40.0);
          WhiteNoiseInfo info;
          clip = WhiteNoiseAttack(clip, current_labels(), snr_db, step_seed,
                                  &info);
          out.attack_info = {{"kind", kind},
                             {"head_samples", info.head_samples},
                             {"tail_samples", info.tail_samples},
                             {"snr_db", snr_db}};
        } else {
          const std::string pool_path =
              step.params.at("pool").get<std::string>();
          const SilencePool &pool = ctx.pools.at(pool_path);
          SilenceAttackInfo info;
          clip = ConcatSilenceAttack(clip, pool, step_seed, &info);
          out.attack_info = {
              {"kind", kind},
              {"head_source", pool.entries[info.head_entry].source_utt},
              {"tail_source", pool.entries[info.tail_entry].source_utt},
              {"head_samples", info.head_samples},
              {"tail_samples", info.tail_samples}};
        }
        labels.reset();
      } else if (step.op == "features") {
        const std::string type = step.params.at("type").get<std::string>();
        nlohmann::json meta = {{"utt_id", rec.utt_id},
                               {"type", type},
                               {"sample_rate", clip.sample_rate}};
        const std::filesystem::path base =
            cfg.output_dir / "features" / (rec.utt_id + "_" + type);
        if (type == "stft") {
          const Spectrogram spec = StftLowband(clip);
          meta["bin_hz"] = spec.bin_hz;
          meta["hop_s"] = spec.hop_s;
          SaveFeatureMatrix(spec.values, meta, base);
        } else {
          const double fix_seconds = step.params.value("fix_seconds", 6.0);
          AudioClip fixed = FixLengthReflect(
              clip, std::llround(fix_seconds *
                                 static_cast<double>(clip.sample_rate)));
          SaveFeatureMatrix(Lfcc60(fixed), meta, base);
        }
      } else if (step.op == "score") {
        const std::string scorer = step.params.at("scorer").get<std::string>();
        out.score = scorer == "proportion"
                        ? ProportionOfSilence(current_labels())
                        : MeanSilenceFrameDbfs(clip, current_labels());
        out.has_score = true;
      }
    }

    const WavBitDepth depth =
        cfg.output_depth == OutputDepth::kPreserve
            ? clip.source_depth
            : (cfg.output_depth == OutputDepth::kInt16 ? WavBitDepth::kInt16
                                                       : WavBitDepth::kFloat32);
    WriteWav(clip, AudioPathFor(cfg.output_dir / "wav", rec.utt_id), depth);
    out.ok = true;
  } catch (const std::exception &e) {
    out.ok = false;
    out.error = e.what();
  }
  return out;
}

}  // namespace

void PipelineConfig::Validate() const {
  if (manifest.empty() || audio_dir.empty() || output_dir.empty()) {
    throw ConfigError("manifest, audio_dir and output_dir are required");
  }
  if (workers < 1) throw ConfigError("workers must be >= 1");
  vad.Validate();
  int n_score_steps = 0;
  for (const PipelineStep &step : steps) {
    ValidateStep(step);
    if (step.op == "score") ++n_score_steps;
  }
  if (n_score_steps > 1) {
    throw ConfigError("at most one score step per pipeline");
  }
}

PipelineConfig PipelineConfig::FromJsonFile(
    const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception &e) {
    throw FormatError(path.string() + ": " + e.what());
  }

  PipelineConfig cfg;
  for (const auto &[key, value] : j.items()) {
    if (key == "manifest") {
      cfg.manifest = value.get<std::string>();
    } else if (key == "audio_dir") {
      cfg.audio_dir = value.get<std::string>();
    } else if (key == "output_dir") {
      cfg.output_dir = value.get<std::string>();
    } else if (key == "seed") {
      cfg.seed = value.get<uint64_t>();
    } else if (key == "workers") {
      cfg.workers = value.get<int>();
    } else if (key == "vad") {
      cfg.vad = VadFromJson(value);
    } else if (key == "output_depth") {
      cfg.output_depth = DepthFromString(value.get<std::string>());
    } else if (key == "steps") {
      for (const nlohmann::json &sj : value) {
        PipelineStep step;
        step.params = sj;
        if (!step.params.contains("op")) {
          throw ConfigError("pipeline step without op");
        }
        step.op = step.params.at("op").get<std::string>();
        step.params.erase("op");
        cfg.steps.push_back(std::move(step));
      }
    } else {
      throw ConfigError(path.string() + ": unknown key '" + key + "'");
    }
  }
  cfg.Validate();
  return cfg;
}

PipelineRunReport RunPipeline(const PipelineConfig &config) {
  config.Validate();
  const std::vector<TrialRecord> records = ParseManifest(config.manifest);

  RunContext ctx;
  ctx.config = &config;
  ctx.records = &records;
  for (const PipelineStep &step : config.steps) {
    if (step.op == "features") ctx.wants_features = true;
    if (step.op == "score") ctx.wants_scores = true;
    if (step.op == "attack" && step.params.contains("pool")) {
      const std::string pool_path = step.params.at("pool").get<std::string>();
      if (ctx.pools.count(pool_path) == 0) {
        ctx.pools.emplace(pool_path, LoadPool(pool_path));
      }
    }
  }

  std::filesystem::create_directories(config.output_dir / "wav");
  if (ctx.wants_features) {
    std::filesystem::create_directories(config.output_dir / "features");
  }

  std::vector<ClipOutcome> outcomes(records.size());
  std::atomic<size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      const size_t i = next.fetch_add(1);
      if (i >= records.size()) return;
      outcomes[i] = ProcessRecord(ctx, records[i]);
    }
  };
  const int n_workers = static_cast<int>(std::min<size_t>(
      static_cast<size_t>(config.workers), std::max<size_t>(records.size(), 1)));
  if (n_workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> threads;
    threads.reserve(n_workers);
    for (int i = 0; i < n_workers; ++i) threads.emplace_back(worker);
    for (std::thread &t : threads) t.join();
  }

  PipelineRunReport report;
  ScoreSet scores;
  nlohmann::json attacks = nlohmann::json::object();
  for (size_t i = 0; i < records.size(); ++i) {
    const ClipOutcome &out = outcomes[i];
    if (out.ok) {
      ++report.n_ok;
      if (out.has_score) scores[records[i].utt_id] = out.score;
      if (!out.attack_info.is_null()) {
        attacks[records[i].utt_id] = out.attack_info;
      }
    } else {
      ++report.n_failed;
      report.failures.push_back({records[i].utt_id, out.error});
    }
  }
  std::sort(report.failures.begin(), report.failures.end(),
            [](const PipelineFailure &a, const PipelineFailure &b) {
              return a.utt_id < b.utt_id;
            });

  if (ctx.wants_scores) {
    SaveScores(scores, config.output_dir / "scores.txt");
  }
  WriteManifest(records, config.output_dir / "manifest.txt");

  nlohmann::json rj;
  rj["n_ok"] = report.n_ok;
  rj["n_failed"] = report.n_failed;
  rj["failures"] = nlohmann::json::array();
  for (const PipelineFailure &f : report.failures) {
    rj["failures"].push_back({{"utt_id", f.utt_id}, {"error", f.error}});
  }
  if (!attacks.empty()) rj["attacks"] = attacks;
  std::ofstream rf(config.output_dir / "report.json");
  if (!rf) throw IoError("cannot write report.json");
  rf << rj.dump(2) << "\n";
  return report;
}

}  // namespace silencelab
