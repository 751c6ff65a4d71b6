// tests/oracles.cc

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

#include "tests/oracles.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace silencelab {
namespace testing {

namespace {

// FRR at threshold t: fraction of bonafide scores < t.
// FAR at threshold t: fraction of spoof scores >= t.
void RatesAt(const std::vector<double> &bonafide,
             const std::vector<double> &spoof, double t, double *frr,
             double *far) {
  int64_t fr = 0, fa = 0;
  for (double s : bonafide) fr += s < t ? 1 : 0;
  for (double s : spoof) fa += s >= t ? 1 : 0;
  *frr = static_cast<double>(fr) / static_cast<double>(bonafide.size());
  *far = static_cast<double>(fa) / static_cast<double>(spoof.size());
}

}  // namespace

double EerMidpointOracle(const std::vector<double> &bonafide,
                         const std::vector<double> &spoof) {
  if (bonafide.empty() || spoof.empty()) {
    throw std::invalid_argument("both classes required");
  }
  std::vector<double> all = bonafide;
  all.insert(all.end(), spoof.begin(), spoof.end());
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());

  // Thresholds: below everything, every score, every midpoint, above
  // everything. Sweeping scores themselves in addition to midpoints makes
  // the operating-point set a superset of any reasonable convention.
  std::vector<double> thresholds;
  thresholds.push_back(all.front() - 1.0);
  for (size_t i = 0; i < all.size(); ++i) {
    thresholds.push_back(all[i]);
    if (i + 1 < all.size()) {
      thresholds.push_back(0.5 * (all[i] + all[i + 1]));
    }
  }
  thresholds.push_back(all.back() + 1.0);

  double prev_frr, prev_far;
  RatesAt(bonafide, spoof, thresholds[0], &prev_frr, &prev_far);
  for (size_t i = 1; i < thresholds.size(); ++i) {
    double frr, far;
    RatesAt(bonafide, spoof, thresholds[i], &frr, &far);
    const double d0 = prev_far - prev_frr;
    const double d1 = far - frr;
    if (d0 == 0.0) return prev_frr;
    if (d0 > 0.0 && d1 <= 0.0) {
      if (d1 == 0.0) return frr;
      // Linear interpolation between the two operating points.
      const double alpha = d0 / (d0 - d1);
      return prev_frr + alpha * (frr - prev_frr);
    }
    prev_frr = frr;
    prev_far = far;
  }
  // FAR-FRR never crossed below zero: degenerate, all thresholds past the
  // top give FAR 0, FRR 1, so the loop cannot get here with valid input.
  return prev_frr;
}

Matrix DeltaOracle(const Matrix &statics) {
  constexpr int kM = 2;
  const int64_t cols = statics.cols;
  // Pad kM columns on each side by replicating the edge column.
  Matrix padded(statics.rows, cols + 2 * kM);
  for (int64_t r = 0; r < statics.rows; ++r) {
    for (int64_t c = 0; c < padded.cols; ++c) {
      const int64_t src = std::clamp<int64_t>(c - kM, 0, cols - 1);
      padded.At(r, c) = statics.At(r, src);
    }
  }
  double denom = 0.0;
  for (int m = 1; m <= kM; ++m) denom += 2.0 * m * m;

  Matrix out(statics.rows, cols);
  for (int64_t r = 0; r < statics.rows; ++r) {
    for (int64_t t = 0; t < cols; ++t) {
      double num = 0.0;
      for (int m = 1; m <= kM; ++m) {
        num += m * (padded.At(r, t + kM + m) - padded.At(r, t + kM - m));
      }
      out.At(r, t) = num / denom;
    }
  }
  return out;
}

double ButterworthPrototypeGain(double freq_hz, double cutoff_hz) {
  return 1.0 / std::sqrt(1.0 + std::pow(freq_hz / cutoff_hz, 16.0));
}

double MeasuredSineGain(const ButterworthLowPass &filt, double freq_hz) {
  const int rate = filt.sample_rate();
  const int64_t settle = 4 * rate;   // generous for a 1 kHz-cutoff IIR
  const int64_t measure = 2 * rate;  // whole number of cycles not required
  AudioClip tone;                    // at this length
  tone.sample_rate = rate;
  tone.samples.resize(settle + measure);
  for (int64_t i = 0; i < tone.num_samples(); ++i) {
    tone.samples[i] = std::sin(2.0 * M_PI * freq_hz * i / rate);
  }
  const AudioClip filtered = filt.Filter(tone);
  double acc = 0.0;
  for (int64_t i = settle; i < filtered.num_samples(); ++i) {
    acc += filtered.samples[i] * filtered.samples[i];
  }
  const double out_rms = std::sqrt(acc / static_cast<double>(measure));
  return out_rms / (1.0 / std::sqrt(2.0));  // input RMS of a unit sine
}

}  // namespace testing
}  // namespace silencelab
