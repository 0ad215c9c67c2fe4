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

#include "ordersynth/noise.hpp"

#include <cmath>
#include <numbers>

#include "ordersynth/errors.hpp"

namespace ordersynth {

PinkNoise::PinkNoise(std::uint64_t seed, int rows) : rng_(seed) {
  if (rows < 1 || rows > 48) throw ParameterError("pink noise rows must be in [1, 48]");
  rows_.resize(static_cast<std::size_t>(rows));
  for (auto& r : rows_) r = rng_.bipolar();
  norm_ = 1.0 / std::sqrt(static_cast<double>(rows) / 3.0);
}

double PinkNoise::next() {
  ++counter_;
  auto k = static_cast<std::size_t>(std::countr_zero(counter_));
  if (k >= rows_.size()) k = rows_.size() - 1;
  rows_[k] = rng_.bipolar();
  double sum = 0.0;
  for (double r : rows_) sum += r;
  return sum * norm_;
}

ThirdOrderLowpass::ThirdOrderLowpass(double cutoff_hz, double sample_rate) {
  if (cutoff_hz <= 0 || sample_rate <= 0 || cutoff_hz >= sample_rate / 2)
    throw ParameterError("low-pass cutoff must lie in (0, fs/2)");
  const double k = std::tan(std::numbers::pi * cutoff_hz / sample_rate);
  b_ = k / (1.0 + k);
  a_ = (1.0 - k) / (1.0 + k);
}

double ThirdOrderLowpass::process(double x) {
  for (int s = 0; s < 3; ++s) {
    const double y = b_ * (x + x1_[s]) + a_ * y1_[s];
    x1_[s] = x;
    y1_[s] = y;
    x = y;
  }
  return x;
}

void ThirdOrderLowpass::reset() {
  for (int s = 0; s < 3; ++s) x1_[s] = y1_[s] = 0.0;
}

}  // namespace ordersynth
