// include/silencelab/features.h

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

#ifndef SILENCELAB_FEATURES_H_
#define SILENCELAB_FEATURES_H_

#include <filesystem>
#include <vector>

#include "json.hpp"
#include "silencelab/audio_io.h"
#include "silencelab/matrix.h"

namespace silencelab {

// Both feature ops insist on the canonical 16 kHz rate (ValueError
// otherwise); resample first if needed.

// Low-band log spectrogram. 108 ms Hann window (1728 samples), 8.125 ms
// hop (130 samples), 1728-point FFT, log(power + 1e-10), keeping the bins
// up to 4 kHz: floor(4000 / bin_hz) + 1 = 433 rows. The frame axis is then
// normalized to exactly 600 columns: longer clips keep their first 600
// frames, shorter ones are padded by reflection about the last frame.
// Clips shorter than one window are a ValueError.
struct Spectrogram {
  Matrix values;  // 433 x 600
  double bin_hz = 0.0;
  double hop_s = 0.0;
  double max_freq_hz = 0.0;
};

constexpr int kStftWindow = 1728;
constexpr int kStftHop = 130;
constexpr int kStftBins = 433;
constexpr int kStftFrames = 600;

// Both features keep content up to 4 kHz only.
constexpr double kBandLimitHz = 4000.0;

Spectrogram StftLowband(const AudioClip &clip);

// 60-dimensional linear-frequency cepstra: 20 ms Hann window (320
// samples), 10 ms hop, 1024-point FFT, power spectrum up to 4 kHz through
// 20 linearly spaced triangular filters, log energies (floored at 1e-10),
// orthonormal DCT-II, then delta and delta-delta by 2-frame regression
// with edge replication. Rows are [static; delta; delta-delta]. Length
// normalization is the caller's job (FixLengthReflect to 6 s gives the
// usual 60 x 599). Clips shorter than one window are a ValueError.
constexpr int kLfccWindow = 320;
constexpr int kLfccHop = 160;
constexpr int kLfccFftSize = 1024;
constexpr int kLfccChannels = 20;
constexpr int kLfccRows = 60;

Matrix Lfcc60(const AudioClip &clip);

// Regression-based differencing along the column (time) axis:
//   d[t] = sum_{m=1..2} m * (x[t+m] - x[t-m]) / (2 * sum m^2)
// with out-of-range indices replaced by the nearest edge column.
Matrix DeltaRegression(const Matrix &src);

// Periodic Hann window of the given length.
std::vector<double> HannPeriodic(int length);

// One matrix on disk as a pair of files: <base>.f64 with raw row-major
// little-endian float64, and <base>.json describing it (rows, cols, dtype,
// layout, byte order) merged with `meta`.
void SaveFeatureMatrix(const Matrix &m, const nlohmann::json &meta,
                       const std::filesystem::path &base);
Matrix LoadFeatureMatrix(const std::filesystem::path &base);

}  // namespace silencelab

#endif  // SILENCELAB_FEATURES_H_
