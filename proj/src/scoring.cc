// src/scoring.cc

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

#include "silencelab/scoring.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "silencelab/error.h"
#include "silencelab/silence_analysis.h"

namespace silencelab {

namespace {

std::string FormatScore(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Applies fn(utt_id, clip, labels) to every record, collecting errors.
template <typename Fn>
BatchScoreResult ScoreEachClip(const std::vector<TrialRecord> &records,
                               const std::filesystem::path &audio_dir,
                               const VadConfig &cfg, Fn fn) {
  cfg.Validate();
  BatchScoreResult result;
  for (const TrialRecord &rec : records) {
    try {
      const AudioClip clip = ReadWav(AudioPathFor(audio_dir, rec.utt_id));
      const VadLabels labels = LabelFrames(clip, cfg);
      result.scores[rec.utt_id] = fn(clip, labels);
    } catch (const std::exception &e) {
      result.errors.push_back(rec.utt_id + ": " + e.what());
    }
  }
  return result;
}

}  // namespace

EerOperatingPoint ComputeEerFromSamples(std::vector<double> bonafide,
                                        std::vector<double> spoof) {
  if (bonafide.empty() || spoof.empty()) {
    throw ValueError("EER needs at least one score on each side");
  }
  std::sort(bonafide.begin(), bonafide.end());
  std::sort(spoof.begin(), spoof.end());
  const double nb = static_cast<double>(bonafide.size());
  const double ns = static_cast<double>(spoof.size());

  // Operating points at every unique score, plus the all-reject endpoint.
  std::vector<double> thresholds;
  thresholds.reserve(bonafide.size() + spoof.size());
  thresholds.insert(thresholds.end(), bonafide.begin(), bonafide.end());
  thresholds.insert(thresholds.end(), spoof.begin(), spoof.end());
  std::sort(thresholds.begin(), thresholds.end());
  thresholds.erase(std::unique(thresholds.begin(), thresholds.end()),
                   thresholds.end());

  std::vector<double> frr, far, thr;
  frr.reserve(thresholds.size() + 1);
  far.reserve(thresholds.size() + 1);
  thr.reserve(thresholds.size() + 1);
  size_t bi = 0, si = 0;
  for (double t : thresholds) {
    while (bi < bonafide.size() && bonafide[bi] < t) ++bi;
    while (si < spoof.size() && spoof[si] < t) ++si;
    frr.push_back(static_cast<double>(bi) / nb);
    far.push_back((ns - static_cast<double>(si)) / ns);
    thr.push_back(t);
  }
  // Above the maximum score everything is rejected: FRR 1, FAR 0.
  frr.push_back(1.0);
  far.push_back(0.0);
  thr.push_back(thresholds.back());

  // far - frr falls monotonically from +1 territory to -1; interpolate the
  // sign change.
  for (size_t i = 0; i + 1 < frr.size(); ++i) {
    const double d0 = far[i] - frr[i];
    const double d1 = far[i + 1] - frr[i + 1];
    if (d0 < 0.0 || d1 > 0.0) continue;
    if (d0 == d1) {
      return {frr[i], thr[i]};
    }
    const double t = d0 / (d0 - d1);
    return {frr[i] + t * (frr[i + 1] - frr[i]),
            thr[i] + t * (thr[i + 1] - thr[i])};
  }
  throw ValueError("no EER crossing found");  // unreachable
}

EerReport ComputeEer(const ScoreSet &scores,
                     const std::vector<TrialRecord> &records) {
  std::vector<double> bonafide;
  std::map<std::string, std::vector<double>> spoof_by_attack;
  int64_t n_spoof = 0;
  for (const TrialRecord &rec : records) {
    const auto it = scores.find(rec.utt_id);
    if (it == scores.end()) {
      throw ValueError("no score for trial " + rec.utt_id);
    }
    if (rec.key == TrialKey::kBonafide) {
      bonafide.push_back(it->second);
    } else {
      spoof_by_attack[rec.attack_id].push_back(it->second);
      ++n_spoof;
    }
  }
  if (bonafide.empty() || n_spoof == 0) {
    throw ValueError("manifest must contain both bonafide and spoof trials");
  }

  EerReport report;
  report.n_bonafide = static_cast<int64_t>(bonafide.size());
  report.n_spoof = n_spoof;

  std::vector<double> all_spoof;
  all_spoof.reserve(n_spoof);
  for (const auto &[attack, v] : spoof_by_attack) {
    all_spoof.insert(all_spoof.end(), v.begin(), v.end());
  }
  const EerOperatingPoint overall = ComputeEerFromSamples(bonafide, all_spoof);
  report.eer = overall.eer;
  report.threshold = overall.threshold;

  for (const auto &[attack, v] : spoof_by_attack) {
    const EerOperatingPoint p = ComputeEerFromSamples(bonafide, v);
    report.per_attack[attack] = {p.eer, p.threshold,
                                 static_cast<int64_t>(v.size())};
  }
  return report;
}

ScoreSet FuseScores(const ScoreSet &a, const ScoreSet &b, bool normalize) {
  for (const auto &[utt, s] : a) {
    if (b.find(utt) == b.end()) {
      throw ValueError("trial " + utt + " present in one score set only");
    }
  }
  for (const auto &[utt, s] : b) {
    if (a.find(utt) == a.end()) {
      throw ValueError("trial " + utt + " present in one score set only");
    }
  }

  auto znormed = [](const ScoreSet &s) {
    double mean = 0.0;
    for (const auto &[utt, v] : s) mean += v;
    mean /= static_cast<double>(s.size());
    double var = 0.0;
    for (const auto &[utt, v] : s) var += (v - mean) * (v - mean);
    var /= static_cast<double>(s.size());
    const double sd = std::sqrt(var);
    ScoreSet out;
    for (const auto &[utt, v] : s) {
      out[utt] = sd > 0.0 ? (v - mean) / sd : 0.0;
    }
    return out;
  };

  ScoreSet fused;
  if (normalize) {
    const ScoreSet an = znormed(a), bn = znormed(b);
    for (const auto &[utt, v] : an) fused[utt] = 0.5 * (v + bn.at(utt));
  } else {
    for (const auto &[utt, v] : a) fused[utt] = 0.5 * (v + b.at(utt));
  }
  return fused;
}

BatchScoreResult ScoreProportion(const std::vector<TrialRecord> &records,
                                 const std::filesystem::path &audio_dir,
                                 const VadConfig &cfg) {
  return ScoreEachClip(records, audio_dir, cfg,
                       [](const AudioClip &clip, const VadLabels &labels) {
                         (void)clip;
                         return ProportionOfSilence(labels);
                       });
}

double MeanSilenceFrameDbfs(const AudioClip &clip, const VadLabels &labels) {
  const int frame = FrameSamples(clip.sample_rate, labels.frame_ms);
  if (labels.num_frames() != clip.num_samples() / frame) {
    throw ValueError("labels cover " + std::to_string(labels.num_frames()) +
                     " frames but the clip has " +
                     std::to_string(clip.num_samples() / frame));
  }
  double acc = 0.0;
  int64_t n = 0;
  for (int64_t i = 0; i < labels.num_frames(); ++i) {
    if (labels.labels[i] != FrameLabel::kSilence) continue;
    acc += FrameRmsDbfs(
        std::span<const double>(clip.samples.data() + i * frame, frame));
    ++n;
  }
  return n > 0 ? acc / static_cast<double>(n) : kDbfsFloor;
}

BatchScoreResult ScoreSilenceEnergy(const std::vector<TrialRecord> &records,
                                    const std::filesystem::path &audio_dir,
                                    const VadConfig &cfg) {
  return ScoreEachClip(records, audio_dir, cfg,
                       [](const AudioClip &clip, const VadLabels &labels) {
                         return MeanSilenceFrameDbfs(clip, labels);
                       });
}

ScoreSet LoadScores(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());

  ScoreSet scores;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::istringstream fields(line);
    std::string utt, score_text, extra;
    if (!(fields >> utt)) continue;  // blank line
    const std::string where = path.string() + ":" + std::to_string(line_no);
    if (!(fields >> score_text) || (fields >> extra)) {
      throw FormatError(where + ": expected 'UTT_ID SCORE'");
    }
    size_t used = 0;
    double value = 0.0;
    try {
      value = std::stod(score_text, &used);
    } catch (const std::exception &) {
      throw FormatError(where + ": bad score '" + score_text + "'");
    }
    if (used != score_text.size() || !std::isfinite(value)) {
      throw FormatError(where + ": bad score '" + score_text + "'");
    }
    if (!scores.emplace(utt, value).second) {
      throw FormatError(where + ": duplicate trial " + utt);
    }
  }
  return scores;
}

void SaveScores(const ScoreSet &scores, const std::filesystem::path &path) {
  std::ofstream os(path, std::ios::trunc);
  if (!os) throw IoError("cannot open " + path.string() + " for writing");
  for (const auto &[utt, v] : scores) {
    os << utt << ' ' << FormatScore(v) << '\n';
  }
  if (!os) throw IoError("write failed on " + path.string());
}

void WriteEerReportJson(const EerReport &report,
                        const std::filesystem::path &path) {
  nlohmann::json j;
  j["eer"] = report.eer;
  j["threshold"] = report.threshold;
  j["n_bonafide"] = report.n_bonafide;
  j["n_spoof"] = report.n_spoof;
  j["per_attack"] = nlohmann::json::object();
  for (const auto &[attack, p] : report.per_attack) {
    j["per_attack"][attack] = {
        {"eer", p.eer}, {"threshold", p.threshold}, {"n_spoof", p.n_spoof}};
  }
  std::ofstream os(path, std::ios::trunc);
  if (!os) throw IoError("cannot open " + path.string() + " for writing");
  os << j.dump(2) << '\n';
  if (!os) throw IoError("write failed on " + path.string());
}

void WriteEerReportCsv(const EerReport &report,
                       const std::filesystem::path &path) {
  std::ofstream os(path, std::ios::trunc);
  if (!os) throw IoError("cannot open " + path.string() + " for writing");
  char buf[64];
  os << "subset,n_bonafide,n_spoof,eer_percent\n";
  std::snprintf(buf, sizeof buf, "%.2f", 100.0 * report.eer);
  os << "all," << report.n_bonafide << ',' << report.n_spoof << ',' << buf
     << '\n';
  for (const auto &[attack, p] : report.per_attack) {
    std::snprintf(buf, sizeof buf, "%.2f", 100.0 * p.eer);
    os << attack << ',' << report.n_bonafide << ',' << p.n_spoof << ',' << buf
       << '\n';
  }
  if (!os) throw IoError("write failed on " + path.string());
}

}  // namespace silencelab
