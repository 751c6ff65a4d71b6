// include/silencelab/fft.h

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

#ifndef SILENCELAB_FFT_H_
#define SILENCELAB_FFT_H_

#include <complex>

namespace silencelab {

// Real-to-complex FFT of a fixed size, FFTW-backed. Sizes only need to be
// positive; composite non-power-of-two sizes are fine. Each instance owns
// its buffers, so one instance must not be shared across threads, but
// distinct instances may run concurrently (plan creation is serialized
// internally; the FFTW planner is not thread-safe).
class RealFft {
 public:
  explicit RealFft(int size);
  ~RealFft();

  RealFft(const RealFft &) = delete;
  RealFft &operator=(const RealFft &) = delete;

  int size() const { return size_; }
  int num_bins() const { return size_ / 2 + 1; }

  // Unnormalized forward transform: out[k] = sum_n in[n] e^{-2 pi i k n / N}
  // for k in [0, size/2]. `in` holds size() reals, `out` num_bins() bins.
  void Transform(const double *in, std::complex<double> *out);

 private:
  int size_;
  double *in_;
  void *out_;   // fftw_complex*
  void *plan_;  // fftw_plan
};

}  // namespace silencelab

#endif  // SILENCELAB_FFT_H_
