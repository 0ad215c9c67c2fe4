// Copyright (c) 2026, the ordersynth authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ordersynth/fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>

#include "ordersynth/errors.hpp"

namespace ordersynth {

namespace {
// FFTW planning mutates global state; execution on instance-owned buffers
// does not.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace

RealFft::RealFft(std::size_t size) : size_(size) {
  if (size == 0) throw ParameterError("FFT size must be positive");
  in_ = fftw_alloc_real(size);
  out_ = fftw_alloc_complex(size / 2 + 1);
  if (in_ == nullptr || out_ == nullptr) {
    fftw_free(in_);
    fftw_free(out_);
    throw IoError("FFT buffer allocation failed");
  }
  std::lock_guard<std::mutex> lock(planner_mutex());
  plan_ = fftw_plan_dft_r2c_1d(static_cast<int>(size), in_,
                               static_cast<fftw_complex*>(out_), FFTW_ESTIMATE);
}

RealFft::~RealFft() {
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    if (plan_ != nullptr) fftw_destroy_plan(static_cast<fftw_plan>(plan_));
  }
  fftw_free(in_);
  fftw_free(out_);
}

std::vector<std::complex<double>> RealFft::forward(std::span<const double> input) const {
  if (input.size() > size_) throw InputError("FFT input longer than transform size");
  std::copy(input.begin(), input.end(), in_);
  std::fill(in_ + input.size(), in_ + size_, 0.0);
  fftw_execute(static_cast<fftw_plan>(plan_));

  const auto* c = static_cast<const fftw_complex*>(out_);
  std::vector<std::complex<double>> spectrum(size_ / 2 + 1);
  for (std::size_t k = 0; k < spectrum.size(); ++k) spectrum[k] = {c[k][0], c[k][1]};
  return spectrum;
}

std::vector<double> RealFft::magnitude(std::span<const double> input) const {
  if (input.size() > size_) throw InputError("FFT input longer than transform size");
  std::copy(input.begin(), input.end(), in_);
  std::fill(in_ + input.size(), in_ + size_, 0.0);
  fftw_execute(static_cast<fftw_plan>(plan_));

  const auto* c = static_cast<const fftw_complex*>(out_);
  std::vector<double> mag(size_ / 2 + 1);
  for (std::size_t k = 0; k < mag.size(); ++k) mag[k] = std::hypot(c[k][0], c[k][1]);
  return mag;
}

}  // namespace ordersynth
