// src/fft.cc

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

#include "silencelab/fft.h"

#include <fftw3.h>

#include <cstring>
#include <mutex>
#include <string>

#include "silencelab/error.h"

namespace silencelab {

namespace {
// fftw_plan_* and fftw_destroy_plan mutate planner-global state.
std::mutex g_planner_mutex;
}  // namespace

RealFft::RealFft(int size) : size_(size) {
  if (size <= 0) throw ConfigError("FFT size must be positive");
  in_ = fftw_alloc_real(static_cast<size_t>(size));
  fftw_complex *out =
      fftw_alloc_complex(static_cast<size_t>(size / 2 + 1));
  out_ = out;
  if (in_ == nullptr || out == nullptr) {
    throw IoError("FFT buffer allocation failed");
  }
  std::lock_guard<std::mutex> lock(g_planner_mutex);
  plan_ = fftw_plan_dft_r2c_1d(size, in_, out, FFTW_ESTIMATE);
  if (plan_ == nullptr) {
    throw ConfigError("no FFT plan for size " + std::to_string(size));
  }
}

RealFft::~RealFft() {
  {
    std::lock_guard<std::mutex> lock(g_planner_mutex);
    fftw_destroy_plan(static_cast<fftw_plan>(plan_));
  }
  fftw_free(in_);
  fftw_free(static_cast<fftw_complex *>(out_));
}

void RealFft::Transform(const double *in, std::complex<double> *out) {
  std::memcpy(in_, in, sizeof(double) * static_cast<size_t>(size_));
  fftw_execute(static_cast<fftw_plan>(plan_));
  const fftw_complex *raw = static_cast<const fftw_complex *>(out_);
  const int bins = num_bins();
  for (int k = 0; k < bins; ++k) {
    out[k] = std::complex<double>(raw[k][0], raw[k][1]);
  }
}

}  // namespace silencelab
