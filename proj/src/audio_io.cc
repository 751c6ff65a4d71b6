// src/audio_io.cc

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

#include "silencelab/audio_io.h"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>

#include "silencelab/error.h"

namespace silencelab {

namespace {

constexpr uint16_t kFormatPcm = 1;
constexpr uint16_t kFormatIeeeFloat = 3;

std::string ReadFileBytes(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("read failed on " + path.string());
  return buf.str();
}

uint32_t ReadU32(const std::string &b, size_t pos) {
  return static_cast<uint32_t>(static_cast<unsigned char>(b[pos])) |
         static_cast<uint32_t>(static_cast<unsigned char>(b[pos + 1])) << 8 |
         static_cast<uint32_t>(static_cast<unsigned char>(b[pos + 2])) << 16 |
         static_cast<uint32_t>(static_cast<unsigned char>(b[pos + 3])) << 24;
}

uint16_t ReadU16(const std::string &b, size_t pos) {
  return static_cast<uint16_t>(static_cast<unsigned char>(b[pos]) |
                               static_cast<unsigned char>(b[pos + 1]) << 8);
}

void AppendU32(std::string *out, uint32_t v) {
  for (int i = 0; i < 4; ++i) out->push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}

void AppendU16(std::string *out, uint16_t v) {
  out->push_back(static_cast<char>(v & 0xFF));
  out->push_back(static_cast<char>((v >> 8) & 0xFF));
}

struct FmtChunk {
  uint16_t format = 0;
  uint16_t channels = 0;
  uint32_t sample_rate = 0;
  uint16_t bits = 0;
};

}  // namespace

AudioClip ReadWav(const std::filesystem::path &path) {
  const std::string bytes = ReadFileBytes(path);
  const std::string name = path.string();

  if (bytes.size() < 12 || bytes.compare(0, 4, "RIFF") != 0 ||
      bytes.compare(8, 4, "WAVE") != 0) {
    throw FormatError(name + ": not a RIFF/WAVE file");
  }

  FmtChunk fmt;
  bool have_fmt = false;
  size_t data_pos = 0, data_size = 0;
  bool have_data = false;

  size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    const std::string id = bytes.substr(pos, 4);
    const uint32_t size = ReadU32(bytes, pos + 4);
    pos += 8;
    if (pos + size > bytes.size()) {
      throw FormatError(name + ": chunk '" + id + "' overruns the file");
    }
    if (id == "fmt ") {
      if (size < 16) throw FormatError(name + ": fmt chunk too short");
      fmt.format = ReadU16(bytes, pos);
      fmt.channels = ReadU16(bytes, pos + 2);
      fmt.sample_rate = ReadU32(bytes, pos + 4);
      fmt.bits = ReadU16(bytes, pos + 14);
      have_fmt = true;
    } else if (id == "data") {
      data_pos = pos;
      data_size = size;
      have_data = true;
    }
    pos += size + (size & 1);  // chunks are word-aligned
  }

  if (!have_fmt) throw FormatError(name + ": missing fmt chunk");
  if (!have_data) throw FormatError(name + ": missing data chunk");
  if (fmt.sample_rate == 0) throw FormatError(name + ": zero sample rate");
  if (fmt.channels != 1) {
    throw UnsupportedError(name + ": " + std::to_string(fmt.channels) +
                           " channels, only mono is handled");
  }

  AudioClip clip;
  clip.sample_rate = static_cast<int>(fmt.sample_rate);
  clip.source_id = path.stem().string();

  if (fmt.format == kFormatPcm && fmt.bits == 16) {
    if (data_size % 2 != 0) throw FormatError(name + ": odd PCM16 data size");
    const size_t n = data_size / 2;
    clip.source_depth = WavBitDepth::kInt16;
    clip.samples.resize(n);
    for (size_t i = 0; i < n; ++i) {
      const uint16_t raw = ReadU16(bytes, data_pos + 2 * i);
      clip.samples[i] = static_cast<int16_t>(raw) / 32768.0;
    }
  } else if (fmt.format == kFormatIeeeFloat && fmt.bits == 32) {
    if (data_size % 4 != 0) throw FormatError(name + ": odd float32 data size");
    const size_t n = data_size / 4;
    clip.source_depth = WavBitDepth::kFloat32;
    clip.samples.resize(n);
    for (size_t i = 0; i < n; ++i) {
      const uint32_t raw = ReadU32(bytes, data_pos + 4 * i);
      float f;
      std::memcpy(&f, &raw, sizeof f);
      if (!std::isfinite(f)) {
        throw FormatError(name + ": non-finite sample at index " +
                          std::to_string(i));
      }
      clip.samples[i] = std::clamp(static_cast<double>(f), -1.0, 1.0);
    }
  } else {
    throw UnsupportedError(name + ": codec tag " + std::to_string(fmt.format) +
                           " at " + std::to_string(fmt.bits) + " bit");
  }
  return clip;
}

WavWriteStats WriteWav(const AudioClip &clip, const std::filesystem::path &path,
                       WavBitDepth depth) {
  if (clip.sample_rate <= 0) throw ValueError("WriteWav: non-positive sample rate");
  for (double s : clip.samples) {
    if (!std::isfinite(s)) throw ValueError("WriteWav: non-finite sample");
  }

  WavWriteStats stats;
  std::string data;
  if (depth == WavBitDepth::kInt16) {
    data.reserve(clip.samples.size() * 2);
    for (double s : clip.samples) {
      long long v = std::llround(s * 32768.0);  // half away from zero
      if (v > 32767) {
        v = 32767;
        ++stats.clipped;
      } else if (v < -32768) {
        v = -32768;
        ++stats.clipped;
      }
      AppendU16(&data, static_cast<uint16_t>(static_cast<int16_t>(v)));
    }
  } else {
    data.reserve(clip.samples.size() * 4);
    for (double s : clip.samples) {
      double c = s;
      if (c > 1.0) {
        c = 1.0;
        ++stats.clipped;
      } else if (c < -1.0) {
        c = -1.0;
        ++stats.clipped;
      }
      const float f = static_cast<float>(c);
      uint32_t raw;
      std::memcpy(&raw, &f, sizeof raw);
      AppendU32(&data, raw);
    }
  }

  const uint16_t block = depth == WavBitDepth::kInt16 ? 2 : 4;
  const uint16_t bits = depth == WavBitDepth::kInt16 ? 16 : 32;
  const uint16_t tag = depth == WavBitDepth::kInt16 ? kFormatPcm : kFormatIeeeFloat;

  std::string out;
  out.reserve(44 + data.size());
  out.append("RIFF");
  AppendU32(&out, static_cast<uint32_t>(36 + data.size()));
  out.append("WAVE");
  out.append("fmt ");
  AppendU32(&out, 16);
  AppendU16(&out, tag);
  AppendU16(&out, 1);  // mono
  AppendU32(&out, static_cast<uint32_t>(clip.sample_rate));
  AppendU32(&out, static_cast<uint32_t>(clip.sample_rate) * block);
  AppendU16(&out, block);
  AppendU16(&out, bits);
  out.append("data");
  AppendU32(&out, static_cast<uint32_t>(data.size()));
  out.append(data);

  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw IoError("cannot open " + path.string() + " for writing");
  os.write(out.data(), static_cast<std::streamsize>(out.size()));
  if (!os) throw IoError("write failed on " + path.string());
  return stats;
}

std::vector<TrialRecord> ParseManifest(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());

  std::vector<TrialRecord> records;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();

    std::istringstream fields(line);
    std::vector<std::string> tok;
    std::string t;
    while (fields >> t) tok.push_back(t);
    if (tok.empty()) continue;  // blank line

    const std::string where = path.string() + ":" + std::to_string(line_no);
    if (tok.size() != 5) {
      throw FormatError(where + ": expected 5 fields, got " +
                        std::to_string(tok.size()));
    }

    TrialRecord rec;
    rec.speaker_id = tok[0];
    rec.utt_id = tok[1];
    rec.attack_id = tok[3];
    if (tok[4] == "bonafide") {
      rec.key = TrialKey::kBonafide;
      if (rec.attack_id != "-") {
        throw FormatError(where + ": bonafide trial with attack id '" +
                          rec.attack_id + "'");
      }
    } else if (tok[4] == "spoof") {
      rec.key = TrialKey::kSpoof;
      if (rec.attack_id == "-") {
        throw FormatError(where + ": spoof trial without an attack id");
      }
    } else {
      throw FormatError(where + ": unknown key '" + tok[4] + "'");
    }
    records.push_back(std::move(rec));
  }
  return records;
}

void WriteManifest(const std::vector<TrialRecord> &records,
                   const std::filesystem::path &path) {
  std::ofstream os(path, std::ios::trunc);
  if (!os) throw IoError("cannot open " + path.string() + " for writing");
  for (const TrialRecord &rec : records) {
    os << rec.speaker_id << ' ' << rec.utt_id << " - " << rec.attack_id << ' '
       << (rec.key == TrialKey::kBonafide ? "bonafide" : "spoof") << '\n';
  }
  if (!os) throw IoError("write failed on " + path.string());
}

std::filesystem::path AudioPathFor(const std::filesystem::path &audio_dir,
                                   const std::string &utt_id) {
  return audio_dir / (utt_id + ".wav");
}

}  // namespace silencelab
