// tools/silencelab.cc

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

// Command line front end. One subcommand per workflow stage; every
// randomized stage takes --seed (or SILENCELAB_SEED) and derives all
// per-utterance randomness from it, so reruns and different worker counts
// reproduce identical outputs.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "silencelab/attacks.h"
#include "silencelab/audio_io.h"
#include "silencelab/error.h"
#include "silencelab/features.h"
#include "silencelab/pipeline.h"
#include "silencelab/rng.h"
#include "silencelab/scoring.h"
#include "silencelab/silence_analysis.h"
#include "silencelab/synth.h"
#include "silencelab/transforms.h"
#include "silencelab/vad.h"

namespace silencelab {
namespace {

namespace fs = std::filesystem;

void AddVadOptions(CLI::App *cmd, VadConfig *cfg) {
  cmd->add_option("--frame-ms", cfg->frame_ms, "analysis frame length in ms")
      ->capture_default_str();
  cmd->add_option("--threshold-db", cfg->threshold_db,
                  "fixed silence threshold in dBFS")
      ->capture_default_str();
  cmd->add_option("--hangover", cfg->hangover_frames,
                  "silence frames kept as speech after a detected frame")
      ->capture_default_str();
  cmd->add_flag("--adaptive,!--no-adaptive", cfg->adaptive,
                "raise the threshold to noise floor + margin when higher")
      ->capture_default_str();
  cmd->add_option("--margin-db", cfg->adaptive_margin_db,
                  "margin above the estimated noise floor")
      ->capture_default_str();
}

std::string KeyName(TrialKey key) {
  return key == TrialKey::kBonafide ? "bonafide" : "spoof";
}


// ---------------------------------------------------------------- vad ----

struct VadArgs {
  std::string input;
  std::string labels_json;   // path, or "-" for stdout
  std::string segments_csv;  // path, or "-" for stdout
  VadConfig vad;
};

// Opens path for writing, with "-" standing for stdout.
class OutStream {
 public:
  explicit OutStream(const std::string &path) {
    if (path != "-") {
      file_.open(path);
      if (!file_) throw IoError("cannot write " + path);
    }
  }
  std::ostream &get() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

int RunVad(const VadArgs &args) {
  const AudioClip clip = ReadWav(args.input);
  const VadLabels labels = LabelFrames(clip, args.vad);
  const double frame_s = args.vad.frame_ms / 1000.0;
  const std::vector<Segment> segments = SegmentsFromLabels(labels);

  if (!args.labels_json.empty()) {
    nlohmann::json arr = nlohmann::json::array();
    for (FrameLabel l : labels.labels) {
      arr.push_back(l == FrameLabel::kSilence ? "silence" : "speech");
    }
    OutStream out(args.labels_json);
    out.get() << arr.dump() << "\n";
  }
  if (!args.segments_csv.empty()) {
    OutStream out(args.segments_csv);
    out.get() << "kind,start_frame,end_frame,start_s,end_s\n";
    for (const Segment &seg : segments) {
      char line[128];
      std::snprintf(line, sizeof line, "%s,%lld,%lld,%.3f,%.3f\n",
                    seg.kind == FrameLabel::kSilence ? "silence" : "speech",
                    static_cast<long long>(seg.start_frame),
                    static_cast<long long>(seg.end_frame),
                    seg.start_frame * frame_s, seg.end_frame * frame_s);
      out.get() << line;
    }
  }
  if (!args.labels_json.empty() || !args.segments_csv.empty()) return 0;

  std::printf("file %s\n", args.input.c_str());
  std::printf("sample_rate %d samples %lld frames %lld frame_ms %d\n",
              clip.sample_rate, static_cast<long long>(clip.num_samples()),
              static_cast<long long>(labels.num_frames()), args.vad.frame_ms);
  std::printf("silence_frames %lld proportion %.6f\n",
              static_cast<long long>(labels.CountSilence()),
              ProportionOfSilence(labels));
  for (const Segment &seg : segments) {
    std::printf("%-7s %6lld %6lld   %8.3f %8.3f\n",
                seg.kind == FrameLabel::kSilence ? "silence" : "speech",
                static_cast<long long>(seg.start_frame),
                static_cast<long long>(seg.end_frame),
                seg.start_frame * frame_s, seg.end_frame * frame_s);
  }
  return 0;
}

// -------------------------------------------------------------- stats ----

struct StatsArgs {
  std::string manifest;
  std::string audio_dir;
  std::string out_dir;
  int bins = 10;
  std::string group_by = "key";  // key | attack
  VadConfig vad;
};

int RunStats(const StatsArgs &args) {
  const std::vector<TrialRecord> records = ParseManifest(args.manifest);
  std::vector<SilenceProfile> profiles;
  std::map<std::string, std::string> group_of;
  std::map<std::string, const TrialRecord *> record_of;
  int n_errors = 0;
  for (const TrialRecord &rec : records) {
    try {
      const AudioClip clip = ReadWav(AudioPathFor(args.audio_dir, rec.utt_id));
      profiles.push_back(
          MakeSilenceProfile(rec.utt_id, LabelFrames(clip, args.vad)));
    } catch (const std::exception &e) {
      std::fprintf(stderr, "skipping %s: %s\n", rec.utt_id.c_str(), e.what());
      ++n_errors;
      continue;
    }
    group_of[rec.utt_id] = args.group_by == "attack"
                               ? (rec.key == TrialKey::kBonafide
                                      ? std::string("bonafide")
                                      : rec.attack_id)
                               : KeyName(rec.key);
    record_of[rec.utt_id] = &rec;
  }
  const HistogramTable table = ProportionHistogram(profiles, group_of,
                                                   args.bins);

  fs::create_directories(args.out_dir);
  {
    std::ofstream f(fs::path(args.out_dir) / "profiles.csv");
    f << "utt_id,group,n_frames,n_silence,proportion,n_segments,"
         "head_frames,tail_frames\n";
    for (const SilenceProfile &p : profiles) {
      char line[256];
      std::snprintf(line, sizeof line, "%s,%s,%lld,%lld,%.6f,%lld,%lld,%lld\n",
                    p.utt_id.c_str(), group_of.at(p.utt_id).c_str(),
                    static_cast<long long>(p.n_total_frames),
                    static_cast<long long>(p.n_silence_frames), p.proportion,
                    static_cast<long long>(p.n_silence_segments),
                    static_cast<long long>(p.head_frames),
                    static_cast<long long>(p.tail_frames));
      f << line;
    }
  }
  {
    std::ofstream f(fs::path(args.out_dir) / "histogram.csv");
    f << "bin_lo,bin_hi";
    for (const auto &[group, counts] : table.counts) f << "," << group;
    f << "\n";
    for (int b = 0; b < table.n_bins; ++b) {
      char edges[64];
      std::snprintf(edges, sizeof edges, "%.4f,%.4f",
                    static_cast<double>(b) / table.n_bins,
                    static_cast<double>(b + 1) / table.n_bins);
      f << edges;
      for (const auto &[group, counts] : table.counts) {
        f << "," << counts[b];
      }
      f << "\n";
    }
  }
  {
    std::ofstream f(fs::path(args.out_dir) / "summary.csv");
    f << "group,count,mean,median,q1,q3\n";
    for (const auto &[group, st] : table.stats) {
      char line[192];
      std::snprintf(line, sizeof line, "%s,%lld,%.6f,%.6f,%.6f,%.6f\n",
                    group.c_str(), static_cast<long long>(st.count), st.mean,
                    st.median, st.q1, st.q3);
      f << line;
      std::fputs(line, stdout);
    }
  }
  std::printf("profiles %zu errors %d -> %s\n", profiles.size(), n_errors,
              args.out_dir.c_str());
  return n_errors > 0 ? 1 : 0;
}

// --------------------------------------------------------------- pool ----

struct PoolArgs {
  std::string manifest;
  std::string audio_dir;
  std::string out;
  TrialKey key = TrialKey::kBonafide;
  VadConfig vad;
};

int RunPool(const PoolArgs &args) {
  const std::vector<TrialRecord> records = ParseManifest(args.manifest);
  const PoolBuildResult result =
      BuildSilencePool(records, args.audio_dir, args.key, args.vad);
  for (const std::string &err : result.errors) {
    std::fprintf(stderr, "%s\n", err.c_str());
  }
  SavePool(result.pool, args.out);
  int64_t head = 0, tail = 0;
  for (const SilencePoolEntry &e : result.pool.entries) {
    (e.position == PoolPosition::kHead ? head : tail) += 1;
  }
  std::printf("pool %s: %zu entries (%lld head, %lld tail) from %s trials\n",
              args.out.c_str(), result.pool.entries.size(),
              static_cast<long long>(head), static_cast<long long>(tail),
              KeyName(args.key).c_str());
  return result.errors.empty() ? 0 : 1;
}

// ---------------------------------------------------------- transform ----

struct TransformArgs {
  std::string input;
  std::string output;
  std::string op;
  double cutoff_hz = 1000.0;
  double target_seconds = 6.0;
  int target_hz = kCanonicalSampleRate;
  uint64_t seed = 0;
  std::string depth = "preserve";
  VadConfig vad;
};

int RunTransform(const TransformArgs &args) {
  AudioClip clip = ReadWav(args.input);
  if (args.op == "remove" || args.op == "sil-mask" ||
      args.op == "speech-mask") {
    const VadLabels labels = LabelFrames(clip, args.vad);
    if (args.op == "remove") {
      clip = RemoveSilence(clip, labels);
    } else if (args.op == "sil-mask") {
      clip = MaskSilence(clip, labels);
    } else {
      clip = MaskSpeech(clip, labels);
    }
  } else if (args.op == "lowpass") {
    clip = ButterworthLowPass(args.cutoff_hz, clip.sample_rate).Filter(clip);
  } else if (args.op == "fixlen-reflect" || args.op == "fixlen-repeat") {
    const int64_t target = std::llround(
        args.target_seconds * static_cast<double>(clip.sample_rate));
    clip = args.op == "fixlen-reflect"
               ? FixLengthReflect(clip, target)
               : FixLengthRepeat(clip, target,
                                 DeriveSeed(args.seed, clip.source_id));
  } else if (args.op == "resample") {
    clip = ResampleLinear(clip, args.target_hz);
  } else {
    throw ConfigError("unknown transform op '" + args.op + "'");
  }
  const WavBitDepth depth = args.depth == "preserve"
                                ? clip.source_depth
                                : (args.depth == "int16"
                                       ? WavBitDepth::kInt16
                                       : WavBitDepth::kFloat32);
  const WavWriteStats stats = WriteWav(clip, args.output, depth);
  std::printf("%s -> %s (%lld samples at %d Hz)\n", args.op.c_str(),
              args.output.c_str(), static_cast<long long>(clip.num_samples()),
              clip.sample_rate);
  if (stats.clipped > 0) {
    std::fprintf(stderr, "warning: %lld samples clipped on write\n",
                 static_cast<long long>(stats.clipped));
  }
  return 0;
}

// ----------------------------------------------------------- features ----

struct FeaturesArgs {
  std::string input;
  std::string out_base;
  std::string type = "stft";
  double fix_seconds = 6.0;
};

int RunFeatures(const FeaturesArgs &args) {
  AudioClip clip = ReadWav(args.input);
  nlohmann::json meta = {{"utt_id", clip.source_id},
                         {"type", args.type},
                         {"sample_rate", clip.sample_rate}};
  int64_t rows = 0, cols = 0;
  if (args.type == "stft") {
    const Spectrogram spec = StftLowband(clip);
    meta["bin_hz"] = spec.bin_hz;
    meta["hop_s"] = spec.hop_s;
    rows = spec.values.rows;
    cols = spec.values.cols;
    SaveFeatureMatrix(spec.values, meta, args.out_base);
  } else if (args.type == "lfcc") {
    if (args.fix_seconds > 0.0) {
      clip = FixLengthReflect(
          clip, std::llround(args.fix_seconds *
                             static_cast<double>(clip.sample_rate)));
    }
    const Matrix m = Lfcc60(clip);
    rows = m.rows;
    cols = m.cols;
    SaveFeatureMatrix(m, meta, args.out_base);
  } else {
    throw ConfigError("unknown feature type '" + args.type + "'");
  }
  std::printf("%s features %lldx%lld -> %s.f64\n", args.type.c_str(),
              static_cast<long long>(rows), static_cast<long long>(cols),
              args.out_base.c_str());
  return 0;
}

// ------------------------------------------------------------- attack ----

struct AttackArgs {
  std::string manifest;
  std::string audio_dir;
  std::string out_dir;
  std::string kind;  // bonafide-silence | spoof-silence | white-noise
  std::string pool_path;
  double snr_db = 40.0;
  uint64_t seed = 0;
  VadConfig vad;
};

int RunAttack(const AttackArgs &args) {
  const std::string kind = AttackKindName(AttackKindFromString(args.kind));
  if (kind != std::string("white") && args.pool_path.empty()) {
    throw ConfigError("attack kind '" + kind + "' requires --pool");
  }
  const std::vector<TrialRecord> records = ParseManifest(args.manifest);
  SilencePool pool;
  if (!args.pool_path.empty()) pool = LoadPool(args.pool_path);

  fs::create_directories(fs::path(args.out_dir) / "wav");
  nlohmann::json provenance = nlohmann::json::object();
  int64_t n_attacked = 0, n_copied = 0, n_failed = 0;
  for (const TrialRecord &rec : records) {
    const fs::path src = AudioPathFor(args.audio_dir, rec.utt_id);
    const fs::path dst =
        AudioPathFor(fs::path(args.out_dir) / "wav", rec.utt_id);
    try {
      if (rec.key == TrialKey::kBonafide) {
        // Bonafide trials pass through untouched, byte for byte.
        fs::copy_file(src, dst, fs::copy_options::overwrite_existing);
        ++n_copied;
        continue;
      }
      const AudioClip clip = ReadWav(src);
      const uint64_t seed_u = DeriveSeed(args.seed, rec.utt_id);
      AudioClip attacked;
      if (kind == std::string("white")) {
        const VadLabels labels = LabelFrames(clip, args.vad);
        WhiteNoiseInfo info;
        attacked = WhiteNoiseAttack(clip, labels, args.snr_db, seed_u, &info);
        provenance[rec.utt_id] = {{"kind", kind},
                                  {"head_samples", info.head_samples},
                                  {"tail_samples", info.tail_samples},
                                  {"snr_db", args.snr_db},
                                  {"measured_snr_db", info.measured_snr_db}};
      } else {
        SilenceAttackInfo info;
        attacked = ConcatSilenceAttack(clip, pool, seed_u, &info);
        provenance[rec.utt_id] = {
            {"kind", kind},
            {"head_source", pool.entries[info.head_entry].source_utt},
            {"tail_source", pool.entries[info.tail_entry].source_utt},
            {"head_samples", info.head_samples},
            {"tail_samples", info.tail_samples}};
      }
      WriteWav(attacked, dst, clip.source_depth);
      ++n_attacked;
    } catch (const std::exception &e) {
      std::fprintf(stderr, "failed %s: %s\n", rec.utt_id.c_str(), e.what());
      ++n_failed;
    }
  }
  WriteManifest(records, fs::path(args.out_dir) / "manifest.txt");
  std::ofstream pf(fs::path(args.out_dir) / "provenance.json");
  if (!pf) throw IoError("cannot write provenance.json");
  pf << provenance.dump(2) << "\n";
  std::printf("attacked %lld spoof, copied %lld bonafide, failed %lld\n",
              static_cast<long long>(n_attacked),
              static_cast<long long>(n_copied),
              static_cast<long long>(n_failed));
  return n_failed > 0 ? 1 : 0;
}

// ---------------------------------------------------------------- eer ----

struct EerArgs {
  std::string manifest;
  std::string scores_path;
  std::string scorer;  // proportion | silence-energy
  std::string audio_dir;
  bool negate = false;
  std::string save_scores;
  std::string report_json;
  std::string report_csv;
  VadConfig vad;
};

int RunEer(const EerArgs &args) {
  const std::vector<TrialRecord> records = ParseManifest(args.manifest);
  ScoreSet scores;
  if (!args.scores_path.empty()) {
    scores = LoadScores(args.scores_path);
  } else if (!args.scorer.empty()) {
    if (args.audio_dir.empty()) {
      throw ConfigError("--scorer requires --audio-dir");
    }
    const BatchScoreResult result =
        args.scorer == "proportion"
            ? ScoreProportion(records, args.audio_dir, args.vad)
            : ScoreSilenceEnergy(records, args.audio_dir, args.vad);
    for (const std::string &err : result.errors) {
      std::fprintf(stderr, "%s\n", err.c_str());
    }
    if (!result.errors.empty()) return 1;
    scores = result.scores;
  } else {
    throw ConfigError("need --scores or --scorer");
  }
  if (args.negate) {
    for (auto &[utt, s] : scores) s = -s;
  }
  if (!args.save_scores.empty()) SaveScores(scores, args.save_scores);

  const EerReport report = ComputeEer(scores, records);
  std::printf("eer %.4f%% threshold %.6g (bonafide %lld, spoof %lld)\n",
              100.0 * report.eer, report.threshold,
              static_cast<long long>(report.n_bonafide),
              static_cast<long long>(report.n_spoof));
  for (const auto &[attack, ae] : report.per_attack) {
    std::printf("  %-8s eer %.4f%% (n_spoof %lld)\n", attack.c_str(),
                100.0 * ae.eer, static_cast<long long>(ae.n_spoof));
  }
  if (!args.report_json.empty()) WriteEerReportJson(report, args.report_json);
  if (!args.report_csv.empty()) WriteEerReportCsv(report, args.report_csv);
  return 0;
}

// --------------------------------------------------------------- fuse ----

struct FuseArgs {
  std::string a;
  std::string b;
  std::string out;
  bool normalize = false;
};

int RunFuse(const FuseArgs &args) {
  const ScoreSet fused =
      FuseScores(LoadScores(args.a), LoadScores(args.b), args.normalize);
  SaveScores(fused, args.out);
  std::printf("fused %zu scores -> %s\n", fused.size(), args.out.c_str());
  return 0;
}

// ----------------------------------------------------------- pipeline ----

int RunPipelineCmd(const std::string &config_path) {
  const PipelineConfig config = PipelineConfig::FromJsonFile(config_path);
  const PipelineRunReport report = RunPipeline(config);
  for (const PipelineFailure &f : report.failures) {
    std::fprintf(stderr, "failed %s: %s\n", f.utt_id.c_str(),
                 f.error.c_str());
  }
  std::printf("pipeline ok %lld failed %lld -> %s\n",
              static_cast<long long>(report.n_ok),
              static_cast<long long>(report.n_failed),
              config.output_dir.string().c_str());
  return report.n_failed > 0 ? 1 : 0;
}

// ------------------------------------------------------------- corpus ----

struct SynthArgs {
  std::string spec_path;
  std::string out_dir;
  int n_bonafide = 50;
  int n_per_attack = 50;
  uint64_t seed = 0;
};

int RunSynth(const SynthArgs &args) {
  SyntheticCorpusSpec spec;
  if (!args.spec_path.empty()) {
    spec = SyntheticCorpusSpec::FromJsonFile(args.spec_path);
  } else {
    spec.n_bonafide = args.n_bonafide;
    spec.n_per_attack = args.n_per_attack;
    spec.seed = args.seed;
    spec.bonafide = {0.4, 0.05, SilenceKind::kNaturalNoise};
    // Stock demo attacks: one with clipped-off silence, one that keeps the
    // bonafide amount but writes digital zeros into it.
    spec.attack_profiles["TTS"] = {0.1, 0.05, SilenceKind::kNaturalNoise};
    spec.attack_profiles["VC"] = {0.4, 0.05, SilenceKind::kDigitalZero};
  }
  const std::vector<TrialRecord> records =
      GenerateSyntheticCorpus(spec, args.out_dir);
  int64_t n_bona = 0;
  for (const TrialRecord &r : records) {
    if (r.key == TrialKey::kBonafide) ++n_bona;
  }
  std::printf("synthesized %zu clips (%lld bonafide) -> %s\n", records.size(),
              static_cast<long long>(n_bona), args.out_dir.c_str());
  return 0;
}

int Main(int argc, char **argv) {
  CLI::App app{"silence analysis toolkit for speech anti-spoofing work"};
  app.require_subcommand(1);

  VadArgs vad_args;
  CLI::App *vad_cmd = app.add_subcommand("vad", "label one clip and print "
                                                "its silence segmentation");
  vad_cmd->add_option("input", vad_args.input, "input wav")->required();
  vad_cmd->add_option("--labels-json", vad_args.labels_json,
                      "write per-frame labels as a JSON array ('-': stdout)");
  vad_cmd->add_option("--segments-csv", vad_args.segments_csv,
                      "write segments as CSV ('-': stdout)");
  AddVadOptions(vad_cmd, &vad_args.vad);

  StatsArgs stats_args;
  CLI::App *stats_cmd = app.add_subcommand(
      "stats", "per-utterance silence profiles and group histograms");
  stats_cmd->add_option("--manifest", stats_args.manifest)->required();
  stats_cmd->add_option("--audio-dir", stats_args.audio_dir)->required();
  stats_cmd->add_option("--out-dir", stats_args.out_dir)->required();
  stats_cmd->add_option("--bins", stats_args.bins, "histogram bins")
      ->capture_default_str();
  stats_cmd
      ->add_option("--group-by", stats_args.group_by,
                   "grouping: key (bonafide/spoof) or attack")
      ->check(CLI::IsMember({"key", "attack"}))
      ->capture_default_str();
  AddVadOptions(stats_cmd, &stats_args.vad);

  PoolArgs pool_args;
  CLI::App *pool_cmd = app.add_subcommand(
      "pool", "harvest edge silence from a corpus into a pool file");
  pool_cmd->add_option("--manifest", pool_args.manifest)->required();
  pool_cmd->add_option("--audio-dir", pool_args.audio_dir)->required();
  pool_cmd->add_option("--out", pool_args.out)->required();
  pool_cmd
      ->add_option("--key", pool_args.key, "which trials to harvest from")
      ->transform(CLI::CheckedTransformer(
          std::map<std::string, TrialKey>{{"bonafide", TrialKey::kBonafide},
                                          {"spoof", TrialKey::kSpoof}}))
      ->capture_default_str();
  AddVadOptions(pool_cmd, &pool_args.vad);

  TransformArgs tr_args;
  CLI::App *tr_cmd =
      app.add_subcommand("transform", "apply one transform to one clip");
  tr_cmd->add_option("input", tr_args.input)->required();
  tr_cmd->add_option("output", tr_args.output)->required();
  tr_cmd
      ->add_option("--op", tr_args.op,
                   "remove | sil-mask | speech-mask | lowpass | "
                   "fixlen-reflect | fixlen-repeat | resample")
      ->required();
  tr_cmd->add_option("--cutoff-hz", tr_args.cutoff_hz)->capture_default_str();
  tr_cmd->add_option("--target-seconds", tr_args.target_seconds)
      ->capture_default_str();
  tr_cmd->add_option("--target-hz", tr_args.target_hz)->capture_default_str();
  tr_cmd->add_option("--seed", tr_args.seed)->envname("SILENCELAB_SEED");
  tr_cmd->add_option("--depth", tr_args.depth)
      ->check(CLI::IsMember({"preserve", "int16", "float32"}))
      ->capture_default_str();
  AddVadOptions(tr_cmd, &tr_args.vad);

  FeaturesArgs feat_args;
  CLI::App *feat_cmd =
      app.add_subcommand("features", "extract a feature matrix from a clip");
  feat_cmd->add_option("input", feat_args.input)->required();
  feat_cmd->add_option("--out", feat_args.out_base, "output base path")
      ->required();
  feat_cmd->add_option("--type", feat_args.type, "stft | lfcc")
      ->check(CLI::IsMember({"stft", "lfcc"}))
      ->capture_default_str();
  feat_cmd
      ->add_option("--fix-seconds", feat_args.fix_seconds,
                   "reflect-pad/crop before lfcc; 0 to disable")
      ->capture_default_str();

  AttackArgs atk_args;
  CLI::App *atk_cmd = app.add_subcommand(
      "attack", "apply a silence attack to the spoof half of a corpus");
  atk_cmd->add_option("--manifest", atk_args.manifest)->required();
  atk_cmd->add_option("--audio-dir", atk_args.audio_dir)->required();
  atk_cmd->add_option("--out-dir", atk_args.out_dir)->required();
  atk_cmd
      ->add_option("--kind", atk_args.kind, "bona | spoof | white")
      ->check(CLI::IsMember({"bona", "spoof", "white", "bonafide-silence",
                             "spoof-silence", "white-noise"}))
      ->required();
  atk_cmd->add_option("--pool", atk_args.pool_path, "silence pool file");
  atk_cmd->add_option("--snr-db", atk_args.snr_db)->capture_default_str();
  atk_cmd->add_option("--seed", atk_args.seed)->envname("SILENCELAB_SEED");
  AddVadOptions(atk_cmd, &atk_args.vad);

  EerArgs eer_args;
  CLI::App *eer_cmd =
      app.add_subcommand("eer", "equal error rate of a scored trial list");
  eer_cmd->add_option("--manifest", eer_args.manifest)->required();
  eer_cmd->add_option("--scores", eer_args.scores_path, "score file");
  eer_cmd->add_option("--scorer", eer_args.scorer,
                      "proportion | silence-energy")
      ->check(CLI::IsMember({"proportion", "silence-energy"}));
  eer_cmd->add_option("--audio-dir", eer_args.audio_dir);
  eer_cmd->add_flag("--negate-scores", eer_args.negate,
                    "flip score polarity before scoring");
  eer_cmd->add_option("--save-scores", eer_args.save_scores);
  eer_cmd->add_option("--report-json", eer_args.report_json);
  eer_cmd->add_option("--report-csv", eer_args.report_csv);
  AddVadOptions(eer_cmd, &eer_args.vad);

  FuseArgs fuse_args;
  CLI::App *fuse_cmd =
      app.add_subcommand("fuse", "average two score files");
  fuse_cmd->add_option("a", fuse_args.a)->required();
  fuse_cmd->add_option("b", fuse_args.b)->required();
  fuse_cmd->add_option("--out", fuse_args.out)->required();
  fuse_cmd->add_flag("--normalize", fuse_args.normalize,
                     "z-normalize each file before averaging");

  std::string pipeline_config;
  CLI::App *pipe_cmd =
      app.add_subcommand("pipeline", "batch processing over a manifest");
  CLI::App *pipe_run = pipe_cmd->add_subcommand("run", "run a pipeline");
  pipe_run->add_option("--config", pipeline_config, "pipeline json")
      ->required();
  pipe_cmd->require_subcommand(1);

  SynthArgs synth_args;
  CLI::App *corpus_cmd =
      app.add_subcommand("corpus", "synthetic corpus utilities");
  CLI::App *synth_cmd = corpus_cmd->add_subcommand(
      "synth", "generate a labeled synthetic corpus");
  synth_cmd->add_option("--spec", synth_args.spec_path,
                        "corpus spec json (overrides the stock profiles)");
  synth_cmd->add_option("--out-dir", synth_args.out_dir)->required();
  synth_cmd->add_option("--n-bonafide", synth_args.n_bonafide)
      ->capture_default_str();
  synth_cmd->add_option("--n-per-attack", synth_args.n_per_attack)
      ->capture_default_str();
  synth_cmd->add_option("--seed", synth_args.seed)->envname("SILENCELAB_SEED");
  corpus_cmd->require_subcommand(1);

  CLI11_PARSE(app, argc, argv);

  try {
    if (vad_cmd->parsed()) return RunVad(vad_args);
    if (stats_cmd->parsed()) return RunStats(stats_args);
    if (pool_cmd->parsed()) return RunPool(pool_args);
    if (tr_cmd->parsed()) return RunTransform(tr_args);
    if (feat_cmd->parsed()) return RunFeatures(feat_args);
    if (atk_cmd->parsed()) return RunAttack(atk_args);
    if (eer_cmd->parsed()) return RunEer(eer_args);
    if (fuse_cmd->parsed()) return RunFuse(fuse_args);
    if (pipe_cmd->parsed()) return RunPipelineCmd(pipeline_config);
    if (corpus_cmd->parsed()) return RunSynth(synth_args);
  } catch (const std::exception &e) {
    std::fprintf(stderr, "silencelab: error: %s\n", e.what());
    return 1;
  }
  return 0;
}

}  // namespace
}  // namespace silencelab

int main(int argc, char **argv) { return silencelab::Main(argc, argv); }
