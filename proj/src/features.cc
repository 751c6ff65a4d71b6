// src/features.cc

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

#include "silencelab/features.h"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>

#include "silencelab/error.h"
#include "silencelab/fft.h"

namespace silencelab {

namespace {

constexpr double kLogFloor = 1e-10;

void RequireCanonicalRate(const AudioClip &clip, const char *op) {
  if (clip.sample_rate != kCanonicalSampleRate) {
    throw ValueError(std::string(op) + " expects " +
                     std::to_string(kCanonicalSampleRate) + " Hz, clip is " +
                     std::to_string(clip.sample_rate) + " Hz");
  }
}

// Index into [0, n) mirrored about the last element, matching the
// reflection used for waveform length fixing.
int64_t MirrorIndex(int64_t i, int64_t n) {
  if (n == 1) return 0;
  const int64_t period = 2 * (n - 1);
  const int64_t m = i % period;
  return m < n ? m : period - m;
}

}  // namespace

std::vector<double> HannPeriodic(int length) {
  std::vector<double> w(length);
  for (int i = 0; i < length; ++i) {
    w[i] = 0.5 - 0.5 * std::cos(2.0 * M_PI * i / length);
  }
  return w;
}

Spectrogram StftLowband(const AudioClip &clip) {
  RequireCanonicalRate(clip, "StftLowband");
  const int64_t n = clip.num_samples();
  if (n < kStftWindow) {
    throw ValueError("need at least " + std::to_string(kStftWindow) +
                     " samples, got " + std::to_string(n));
  }
  const int64_t raw_frames = 1 + (n - kStftWindow) / kStftHop;
  const std::vector<double> window = HannPeriodic(kStftWindow);

  Matrix raw(kStftBins, raw_frames);
  RealFft fft(kStftWindow);
  std::vector<double> buf(kStftWindow);
  std::vector<std::complex<double>> spec(fft.num_bins());
  for (int64_t f = 0; f < raw_frames; ++f) {
    const double *src = clip.samples.data() + f * kStftHop;
    for (int i = 0; i < kStftWindow; ++i) buf[i] = src[i] * window[i];
    fft.Transform(buf.data(), spec.data());
    for (int k = 0; k < kStftBins; ++k) {
      raw.At(k, f) = std::log(std::norm(spec[k]) + kLogFloor);
    }
  }

  Spectrogram out;
  out.bin_hz = static_cast<double>(kCanonicalSampleRate) / kStftWindow;
  out.hop_s = static_cast<double>(kStftHop) / kCanonicalSampleRate;
  out.max_freq_hz = kBandLimitHz;
  out.values = Matrix(kStftBins, kStftFrames);
  // Normalize the frame axis to 600 columns: trim, or reflect-pad.
  for (int64_t c = 0; c < kStftFrames; ++c) {
    const int64_t src = c < raw_frames ? c : MirrorIndex(c, raw_frames);
    for (int k = 0; k < kStftBins; ++k) {
      out.values.At(k, c) = raw.At(k, src);
    }
  }
  return out;
}

Matrix DeltaRegression(const Matrix &src) {
  constexpr int kM = 2;
  constexpr double kDenom = 2.0 * (1 * 1 + 2 * 2);
  Matrix out(src.rows, src.cols);
  for (int64_t r = 0; r < src.rows; ++r) {
    for (int64_t t = 0; t < src.cols; ++t) {
      double num = 0.0;
      for (int m = 1; m <= kM; ++m) {
        const int64_t fwd = std::min(t + m, src.cols - 1);
        const int64_t bwd = std::max<int64_t>(t - m, 0);
        num += m * (src.At(r, fwd) - src.At(r, bwd));
      }
      out.At(r, t) = num / kDenom;
    }
  }
  return out;
}

Matrix Lfcc60(const AudioClip &clip) {
  RequireCanonicalRate(clip, "Lfcc60");
  const int64_t n = clip.num_samples();
  if (n < kLfccWindow) {
    throw ValueError("need at least " + std::to_string(kLfccWindow) +
                     " samples, got " + std::to_string(n));
  }
  const int64_t frames = 1 + (n - kLfccWindow) / kLfccHop;
  const std::vector<double> window = HannPeriodic(kLfccWindow);

  // Triangular filters on 22 evenly spaced edges over [0, 4 kHz]; filter m
  // rises over [edge_m, edge_{m+1}] and falls over [edge_{m+1}, edge_{m+2}].
  const double bin_hz =
      static_cast<double>(kCanonicalSampleRate) / kLfccFftSize;
  const int max_bin = static_cast<int>(kBandLimitHz / bin_hz);  // 256
  std::vector<double> edges(kLfccChannels + 2);
  for (int j = 0; j < kLfccChannels + 2; ++j) {
    edges[j] = kBandLimitHz * j / (kLfccChannels + 1);
  }
  Matrix fbank(kLfccChannels, max_bin + 1);
  for (int m = 0; m < kLfccChannels; ++m) {
    const double lo = edges[m], mid = edges[m + 1], hi = edges[m + 2];
    for (int k = 0; k <= max_bin; ++k) {
      const double f = k * bin_hz;
      double w = 0.0;
      if (f >= lo && f <= mid) {
        w = (f - lo) / (mid - lo);
      } else if (f > mid && f <= hi) {
        w = (hi - f) / (hi - mid);
      }
      fbank.At(m, k) = w;
    }
  }

  // Orthonormal DCT-II, all 20 coefficients kept.
  Matrix dct(kLfccChannels, kLfccChannels);
  for (int k = 0; k < kLfccChannels; ++k) {
    const double alpha = k == 0 ? std::sqrt(1.0 / kLfccChannels)
                                : std::sqrt(2.0 / kLfccChannels);
    for (int m = 0; m < kLfccChannels; ++m) {
      dct.At(k, m) =
          alpha * std::cos(M_PI * k * (2 * m + 1) / (2.0 * kLfccChannels));
    }
  }

  Matrix statics(kLfccChannels, frames);
  RealFft fft(kLfccFftSize);
  std::vector<double> buf(kLfccFftSize, 0.0);
  std::vector<std::complex<double>> spec(fft.num_bins());
  std::vector<double> power(max_bin + 1);
  std::vector<double> logmel(kLfccChannels);
  for (int64_t f = 0; f < frames; ++f) {
    const double *src = clip.samples.data() + f * kLfccHop;
    for (int i = 0; i < kLfccWindow; ++i) buf[i] = src[i] * window[i];
    // buf[kLfccWindow..) stays zero (zero-padded FFT)
    fft.Transform(buf.data(), spec.data());
    for (int k = 0; k <= max_bin; ++k) power[k] = std::norm(spec[k]);

    for (int m = 0; m < kLfccChannels; ++m) {
      double e = 0.0;
      for (int k = 0; k <= max_bin; ++k) e += fbank.At(m, k) * power[k];
      logmel[m] = std::log(std::max(e, kLogFloor));
    }
    for (int k = 0; k < kLfccChannels; ++k) {
      double c = 0.0;
      for (int m = 0; m < kLfccChannels; ++m) {
        c += dct.At(k, m) * logmel[m];
      }
      statics.At(k, f) = c;
    }
  }

  const Matrix delta = DeltaRegression(statics);
  const Matrix delta2 = DeltaRegression(delta);

  Matrix out(kLfccRows, frames);
  for (int64_t t = 0; t < frames; ++t) {
    for (int k = 0; k < kLfccChannels; ++k) {
      out.At(k, t) = statics.At(k, t);
      out.At(kLfccChannels + k, t) = delta.At(k, t);
      out.At(2 * kLfccChannels + k, t) = delta2.At(k, t);
    }
  }
  return out;
}

void SaveFeatureMatrix(const Matrix &m, const nlohmann::json &meta,
                       const std::filesystem::path &base) {
  nlohmann::json header = meta;
  header["rows"] = m.rows;
  header["cols"] = m.cols;
  header["dtype"] = "float64";
  header["layout"] = "row-major";
  header["byte_order"] = "little";

  std::filesystem::path json_path = base;
  json_path += ".json";
  std::ofstream js(json_path, std::ios::trunc);
  if (!js) throw IoError("cannot open " + json_path.string() + " for writing");
  js << header.dump(2) << '\n';
  if (!js) throw IoError("write failed on " + json_path.string());

  std::filesystem::path bin_path = base;
  bin_path += ".f64";
  std::ofstream os(bin_path, std::ios::binary | std::ios::trunc);
  if (!os) throw IoError("cannot open " + bin_path.string() + " for writing");
  std::string bytes;
  bytes.reserve(m.data.size() * 8);
  for (double v : m.data) {
    uint64_t bits;
    std::memcpy(&bits, &v, sizeof bits);
    for (int i = 0; i < 8; ++i) {
      bytes.push_back(static_cast<char>((bits >> (8 * i)) & 0xFF));
    }
  }
  os.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!os) throw IoError("write failed on " + bin_path.string());
}

Matrix LoadFeatureMatrix(const std::filesystem::path &base) {
  std::filesystem::path json_path = base;
  json_path += ".json";
  std::ifstream js(json_path);
  if (!js) throw IoError("cannot open " + json_path.string());
  nlohmann::json header;
  try {
    js >> header;
  } catch (const nlohmann::json::exception &e) {
    throw FormatError(json_path.string() + ": " + e.what());
  }

  Matrix m(header.at("rows").get<int64_t>(), header.at("cols").get<int64_t>());
  std::filesystem::path bin_path = base;
  bin_path += ".f64";
  std::ifstream is(bin_path, std::ios::binary);
  if (!is) throw IoError("cannot open " + bin_path.string());
  std::ostringstream buf;
  buf << is.rdbuf();
  const std::string bytes = buf.str();
  if (bytes.size() != m.data.size() * 8) {
    throw FormatError(bin_path.string() + ": expected " +
                      std::to_string(m.data.size() * 8) + " bytes, got " +
                      std::to_string(bytes.size()));
  }
  for (size_t i = 0; i < m.data.size(); ++i) {
    uint64_t bits = 0;
    for (int b = 0; b < 8; ++b) {
      bits |= static_cast<uint64_t>(
                  static_cast<unsigned char>(bytes[i * 8 + b]))
              << (8 * b);
    }
    std::memcpy(&m.data[i], &bits, sizeof bits);
  }
  return m;
}

}  // namespace silencelab
