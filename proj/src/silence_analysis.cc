// src/silence_analysis.cc

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

#include "silencelab/silence_analysis.h"

#include <algorithm>
#include <cstring>
#include <fstream>
#include <numeric>
#include <sstream>

#include "json.hpp"
#include "silencelab/error.h"

namespace silencelab {

namespace {

// labels must describe exactly the full frames of clip.
int ValidatedFrameSamples(const AudioClip &clip, const VadLabels &labels) {
  const int frame = FrameSamples(clip.sample_rate, labels.frame_ms);
  if (labels.num_frames() != clip.num_samples() / frame) {
    throw ValueError("labels cover " + std::to_string(labels.num_frames()) +
                     " frames but the clip has " +
                     std::to_string(clip.num_samples() / frame));
  }
  return frame;
}

void AppendF64(std::string *out, double v) {
  uint64_t bits;
  std::memcpy(&bits, &v, sizeof bits);
  for (int i = 0; i < 8; ++i) {
    out->push_back(static_cast<char>((bits >> (8 * i)) & 0xFF));
  }
}

double ReadF64(const std::string &b, size_t pos) {
  uint64_t bits = 0;
  for (int i = 0; i < 8; ++i) {
    bits |= static_cast<uint64_t>(static_cast<unsigned char>(b[pos + i]))
            << (8 * i);
  }
  double v;
  std::memcpy(&v, &bits, sizeof v);
  return v;
}

constexpr char kPoolMagic[] = "SLPOOL1\n";

}  // namespace

double ProportionOfSilence(const VadLabels &labels) {
  if (labels.num_frames() == 0) return 0.0;
  return static_cast<double>(labels.CountSilence()) /
         static_cast<double>(labels.num_frames());
}

SilenceProfile MakeSilenceProfile(const std::string &utt_id,
                                  const VadLabels &labels) {
  SilenceProfile p;
  p.utt_id = utt_id;
  p.n_total_frames = labels.num_frames();
  p.n_silence_frames = labels.CountSilence();
  p.proportion = ProportionOfSilence(labels);
  const std::vector<Segment> segs = SegmentsFromLabels(labels);
  for (const Segment &s : segs) {
    if (s.kind == FrameLabel::kSilence) ++p.n_silence_segments;
  }
  if (!segs.empty() && segs.front().kind == FrameLabel::kSilence) {
    p.head_frames = segs.front().end_frame - segs.front().start_frame;
  }
  if (!segs.empty() && segs.back().kind == FrameLabel::kSilence) {
    p.tail_frames = segs.back().end_frame - segs.back().start_frame;
  }
  return p;
}

EdgeSilence ExtractEdgeSilence(const AudioClip &clip, const VadLabels &labels) {
  const int frame = ValidatedFrameSamples(clip, labels);
  EdgeSilence out;
  const std::vector<Segment> segs = SegmentsFromLabels(labels);
  if (segs.empty()) return out;  // nothing labeled, nothing to slice

  const bool all_silence =
      segs.size() == 1 && segs.front().kind == FrameLabel::kSilence;

  if (all_silence) {
    // Single silence run owns the clip, trailing partial included.
    out.head.assign(clip.samples.begin(), clip.samples.end());
    return out;
  }

  if (segs.front().kind == FrameLabel::kSilence) {
    out.head.assign(clip.samples.begin(),
                    clip.samples.begin() + segs.front().end_frame * frame);
  }
  if (segs.back().kind == FrameLabel::kSilence) {
    // Trailing silence reaches the end of the clip, so the unlabeled
    // partial frame (if any) goes with it.
    out.tail.assign(clip.samples.begin() + segs.back().start_frame * frame,
                    clip.samples.end());
  }
  return out;
}

PoolBuildResult BuildSilencePool(const std::vector<TrialRecord> &records,
                                 const std::filesystem::path &audio_dir,
                                 TrialKey key_filter, const VadConfig &cfg) {
  cfg.Validate();
  PoolBuildResult result;
  result.pool.source_key = key_filter;
  bool rate_set = false;

  for (const TrialRecord &rec : records) {
    if (rec.key != key_filter) continue;
    try {
      const AudioClip clip = ReadWav(AudioPathFor(audio_dir, rec.utt_id));
      if (!rate_set) {
        result.pool.sample_rate = clip.sample_rate;
        rate_set = true;
      } else if (clip.sample_rate != result.pool.sample_rate) {
        throw ValueError("sample rate " + std::to_string(clip.sample_rate) +
                         " differs from the pool's " +
                         std::to_string(result.pool.sample_rate));
      }
      const VadLabels labels = LabelFrames(clip, cfg);
      EdgeSilence edges = ExtractEdgeSilence(clip, labels);
      if (!edges.head.empty()) {
        result.pool.entries.push_back(
            {rec.utt_id, PoolPosition::kHead, std::move(edges.head)});
      }
      if (!edges.tail.empty()) {
        result.pool.entries.push_back(
            {rec.utt_id, PoolPosition::kTail, std::move(edges.tail)});
      }
    } catch (const std::exception &e) {
      result.errors.push_back(rec.utt_id + ": " + e.what());
    }
  }
  return result;
}

void SavePool(const SilencePool &pool, const std::filesystem::path &path) {
  nlohmann::json index;
  index["sample_rate"] = pool.sample_rate;
  index["source_key"] =
      pool.source_key == TrialKey::kBonafide ? "bonafide" : "spoof";
  index["entries"] = nlohmann::json::array();
  for (const SilencePoolEntry &e : pool.entries) {
    index["entries"].push_back(
        {{"source_utt", e.source_utt},
         {"position", e.position == PoolPosition::kHead ? "head" : "tail"},
         {"num_samples", e.samples.size()}});
  }
  const std::string header = index.dump();

  std::string out(kPoolMagic);
  uint64_t len = header.size();
  for (int i = 0; i < 8; ++i) {
    out.push_back(static_cast<char>((len >> (8 * i)) & 0xFF));
  }
  out.append(header);
  for (const SilencePoolEntry &e : pool.entries) {
    for (double s : e.samples) AppendF64(&out, s);
  }

  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw IoError("cannot open " + path.string() + " for writing");
  os.write(out.data(), static_cast<std::streamsize>(out.size()));
  if (!os) throw IoError("write failed on " + path.string());
}

SilencePool LoadPool(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  const std::string bytes = buf.str();

  const size_t magic_len = sizeof(kPoolMagic) - 1;
  if (bytes.size() < magic_len + 8 ||
      bytes.compare(0, magic_len, kPoolMagic) != 0) {
    throw FormatError(path.string() + ": not a silence pool file");
  }
  uint64_t header_len = 0;
  for (int i = 0; i < 8; ++i) {
    header_len |= static_cast<uint64_t>(
                      static_cast<unsigned char>(bytes[magic_len + i]))
                  << (8 * i);
  }
  size_t pos = magic_len + 8;
  if (pos + header_len > bytes.size()) {
    throw FormatError(path.string() + ": truncated header");
  }

  nlohmann::json index;
  try {
    index = nlohmann::json::parse(bytes.substr(pos, header_len));
  } catch (const nlohmann::json::exception &e) {
    throw FormatError(path.string() + ": bad header: " + e.what());
  }
  pos += header_len;

  SilencePool pool;
  pool.sample_rate = index.at("sample_rate").get<int>();
  pool.source_key = index.at("source_key").get<std::string>() == "bonafide"
                        ? TrialKey::kBonafide
                        : TrialKey::kSpoof;
  for (const auto &je : index.at("entries")) {
    SilencePoolEntry entry;
    entry.source_utt = je.at("source_utt").get<std::string>();
    entry.position = je.at("position").get<std::string>() == "head"
                         ? PoolPosition::kHead
                         : PoolPosition::kTail;
    const uint64_t n = je.at("num_samples").get<uint64_t>();
    if (pos + n * 8 > bytes.size()) {
      throw FormatError(path.string() + ": truncated sample data");
    }
    entry.samples.resize(n);
    for (uint64_t i = 0; i < n; ++i) {
      entry.samples[i] = ReadF64(bytes, pos + i * 8);
    }
    pos += n * 8;
    pool.entries.push_back(std::move(entry));
  }
  return pool;
}

HistogramTable ProportionHistogram(
    const std::vector<SilenceProfile> &profiles,
    const std::map<std::string, std::string> &group_of, int n_bins) {
  if (n_bins <= 0) throw ConfigError("histogram needs a positive bin count");

  HistogramTable table;
  table.n_bins = n_bins;
  std::map<std::string, std::vector<double>> values;
  for (const SilenceProfile &p : profiles) {
    const auto it = group_of.find(p.utt_id);
    if (it == group_of.end()) continue;
    const std::string &group = it->second;
    auto &counts = table.counts[group];
    if (counts.empty()) counts.assign(n_bins, 0);
    int bin = static_cast<int>(p.proportion * n_bins);
    bin = std::clamp(bin, 0, n_bins - 1);  // proportion 1.0 -> last bin
    ++counts[bin];
    values[group].push_back(p.proportion);
  }
  for (auto &[group, v] : values) {
    GroupStats gs;
    gs.count = static_cast<int64_t>(v.size());
    gs.mean = std::accumulate(v.begin(), v.end(), 0.0) /
              static_cast<double>(v.size());
    gs.median = Percentile(v, 0.50);
    gs.q1 = Percentile(v, 0.25);
    gs.q3 = Percentile(v, 0.75);
    table.stats[group] = gs;
  }
  return table;
}

}  // namespace silencelab
