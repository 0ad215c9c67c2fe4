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

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "ordersynth/fft.hpp"

namespace testsupport {

/// Unique scratch directory, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    auto base = std::filesystem::temp_directory_path();
    for (int i = 0; i < 10000; ++i) {
      auto candidate = base / (tag + "-" + std::to_string(i));
      std::error_code ec;
      if (std::filesystem::create_directory(candidate, ec)) {
        path_ = candidate;
        return;
      }
    }
    std::abort();
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

inline double rms(const std::vector<double>& x) {
  double acc = 0.0;
  for (double v : x) acc += v * v;
  return std::sqrt(acc / static_cast<double>(x.size()));
}

inline double peak_abs(const std::vector<double>& x) {
  double p = 0.0;
  for (double v : x) p = std::max(p, std::abs(v));
  return p;
}

/// Dominant-peak frequency via Hann-windowed zero-padded FFT.
inline double dominant_frequency(const std::vector<double>& x, double fs, std::size_t pad = 4) {
  const std::size_t n = x.size();
  std::vector<double> w(n);
  for (std::size_t i = 0; i < n; ++i) {
    w[i] = x[i] * 0.5 *
           (1.0 - std::cos(2.0 * std::numbers::pi * static_cast<double>(i) /
                           static_cast<double>(n)));
  }
  ordersynth::RealFft fft(n * pad);
  const std::vector<double> mag = fft.magnitude(w);
  std::size_t best = 1;
  for (std::size_t k = 1; k < mag.size(); ++k)
    if (mag[k] > mag[best]) best = k;
  return static_cast<double>(best) * fs / static_cast<double>(n * pad);
}

inline std::vector<double> sine(double freq, double fs, std::size_t n, double amp = 1.0,
                                double phase = 0.0) {
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i)
    x[i] = amp * std::sin(2.0 * std::numbers::pi * freq * static_cast<double>(i) / fs + phase);
  return x;
}

/// Dominant frequency refined by a log-magnitude parabola around the peak
/// bin; resolves well below one bin for isolated tones.
inline double refined_frequency(const std::vector<double>& x, double fs) {
  const std::size_t n = x.size();
  std::vector<double> w(n);
  for (std::size_t i = 0; i < n; ++i) {
    w[i] = x[i] * 0.5 *
           (1.0 - std::cos(2.0 * std::numbers::pi * static_cast<double>(i) /
                           static_cast<double>(n)));
  }
  ordersynth::RealFft fft(n * 4);
  const std::vector<double> mag = fft.magnitude(w);
  std::size_t best = 1;
  for (std::size_t k = 1; k + 1 < mag.size(); ++k)
    if (mag[k] > mag[best]) best = k;
  const double la = std::log(mag[best - 1] + 1e-300);
  const double lb = std::log(mag[best] + 1e-300);
  const double lc = std::log(mag[best + 1] + 1e-300);
  const double denom = la - 2.0 * lb + lc;
  const double offset = denom == 0.0 ? 0.0 : 0.5 * (la - lc) / denom;
  return (static_cast<double>(best) + offset) * fs / static_cast<double>(n * 4);
}

/// Normalized autocorrelation of a (mean-removed) signal at a sample lag.
inline double autocorr_at(const std::vector<double>& x, std::size_t lag) {
  double mean = 0.0;
  for (double v : x) mean += v;
  mean /= static_cast<double>(x.size());
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i + lag < x.size(); ++i)
    num += (x[i] - mean) * (x[i + lag] - mean);
  for (std::size_t i = 0; i < x.size(); ++i) den += (x[i] - mean) * (x[i] - mean);
  return den == 0.0 ? 0.0 : num / den;
}

/// Rectified signal smoothed by a boxcar; a cheap amplitude envelope.
inline std::vector<double> envelope(const std::vector<double>& x, std::size_t box) {
  std::vector<double> e(x.size(), 0.0);
  double acc = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    acc += std::abs(x[i]);
    if (i >= box) acc -= std::abs(x[i - box]);
    e[i] = acc / static_cast<double>(box);
  }
  return e;
}

}  // namespace testsupport
