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

#pragma once

#include <complex>
#include <span>
#include <vector>

namespace ordersynth {

/// Real-input forward FFT of a fixed size backed by FFTW. Arbitrary sizes
/// are supported (analysis sizes are rarely powers of two). An instance
/// owns its buffers and is single-owner; distinct instances may run on
/// different threads (plan creation is serialized internally).
class RealFft {
 public:
  explicit RealFft(std::size_t size);
  ~RealFft();

  RealFft(const RealFft&) = delete;
  RealFft& operator=(const RealFft&) = delete;

  std::size_t size() const { return size_; }

  /// Magnitude spectrum, bins 0..size/2. Input shorter than size is
  /// zero-padded; longer input is an error.
  std::vector<double> magnitude(std::span<const double> input) const;

  /// Complex spectrum, bins 0..size/2.
  std::vector<std::complex<double>> forward(std::span<const double> input) const;

 private:
  std::size_t size_ = 0;
  void* plan_ = nullptr;  // fftw_plan
  double* in_ = nullptr;
  void* out_ = nullptr;  // fftw_complex*
};

}  // namespace ordersynth
